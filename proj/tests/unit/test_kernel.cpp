#include <cmath>
#include <vector>

#include "doctest.h"

#include "approx.hpp"
#include "illiqcorr/errors.hpp"
#include "illiqcorr/kernel.hpp"
#include "illiqcorr/series.hpp"
#include "oracles.hpp"

using namespace illiq;

TEST_CASE("default bandwidth grid is 30 log-spaced points on [0.005, 0.5]") {
    const auto grid = KernelConfig::default_grid();
    REQUIRE(grid.size() == 30);
    CHECK(grid.front() == testref::Approx(0.005).margin(1e-12));
    CHECK(grid.back() == testref::Approx(0.5).margin(1e-12));

    const double ratio = grid[1] / grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] > grid[i - 1]);
        CHECK(grid[i] / grid[i - 1] == testref::Approx(ratio).margin(1e-9));
    }
}

TEST_CASE("kernel config validation") {
    KernelConfig config;
    CHECK_NOTHROW(config.validate());

    config.bandwidth_grid = {};
    CHECK_THROWS_AS(config.validate(), InvalidConfig);

    config.bandwidth_grid = {0.1, 0.1};
    CHECK_THROWS_AS(config.validate(), InvalidConfig);

    config.bandwidth_grid = {0.1, 1.0};
    CHECK_THROWS_AS(config.validate(), InvalidConfig);

    config.bandwidth_grid = {0.0, 0.1};
    CHECK_THROWS_AS(config.validate(), InvalidConfig);

    config.bandwidth_grid = {0.05, 0.2};
    config.cv_stride = 0;
    CHECK_THROWS_AS(config.validate(), InvalidConfig);
}

TEST_CASE("normalized weight rows sum to one") {
    KernelConfig config;
    const std::size_t n = 40;
    for (std::size_t t : {std::size_t{0}, std::size_t{17}, n - 1}) {
        const auto w = kernel_weights(t, n, 0.1, config);
        REQUIRE(w.size() == n);
        double sum = 0.0;
        for (double x : w) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == testref::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("raw weight matrix is symmetric") {
    KernelConfig config;
    config.normalize_weights = false;
    const std::size_t n = 25;
    for (std::size_t t = 0; t < n; ++t) {
        const auto wt = kernel_weights(t, n, 0.08, config);
        for (std::size_t j = 0; j < n; ++j) {
            const auto wj = kernel_weights(j, n, 0.08, config);
            CHECK(wt[j] == testref::Approx(wj[t]).margin(1e-15));
        }
    }
}

TEST_CASE("smooth matches a double-loop Gaussian regression") {
    std::mt19937_64 rng(314);
    const auto y = testref::random_vector(rng, 50, -2.0, 2.0);

    for (double b : {0.05, 0.1, 0.3}) {
        KernelConfig config;
        const auto fit = smooth(y, b, config);
        const auto ref = testref::smooth(y, b, true);
        REQUIRE(fit.size() == y.size());
        for (std::size_t t = 0; t < y.size(); ++t)
            CHECK(fit[t] == testref::Approx(ref[t]).margin(1e-12));

        config.normalize_weights = false;
        const auto raw = smooth(y, b, config);
        const auto raw_ref = testref::smooth(y, b, false);
        for (std::size_t t = 0; t < y.size(); ++t)
            CHECK(raw[t] == testref::Approx(raw_ref[t]).margin(1e-12));
    }
}

TEST_CASE("normalized smoothing reproduces constants and affine maps") {
    std::mt19937_64 rng(2718);
    const auto y = testref::random_vector(rng, 60, 0.0, 1.0);
    KernelConfig config;

    const std::vector<double> c(60, 0.7);
    for (double v : smooth(c, 0.15, config)) CHECK(v == testref::Approx(0.7).margin(1e-12));

    std::vector<double> affine(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) affine[t] = 3.0 * y[t] - 1.5;
    const auto fit = smooth(y, 0.12, config);
    const auto fit_affine = smooth(affine, 0.12, config);
    for (std::size_t t = 0; t < y.size(); ++t)
        CHECK(fit_affine[t] == testref::Approx(3.0 * fit[t] - 1.5).margin(1e-10));
}

TEST_CASE("probability-target fits are clamped to the unit interval") {
    const std::vector<double> high(20, 2.0);
    KernelConfig config;
    for (double v : smooth(high, 0.2, config, CurveTarget::ZeroProbability))
        CHECK(v == 1.0);

    const std::vector<double> low(20, -1.0);
    for (double v : smooth(low, 0.2, config, CurveTarget::ZeroProbability))
        CHECK(v == 0.0);
}

TEST_CASE("cross-validation objective matches the drop-one reference") {
    std::mt19937_64 rng(99);
    const auto y = testref::random_vector(rng, 60, -1.0, 1.0);

    KernelConfig config;
    config.bandwidth_grid = {0.03, 0.07, 0.15, 0.3};
    const CvResult cv = loocv_bandwidth(y, config);

    double best = std::numeric_limits<double>::infinity();
    double best_b = 0.0;
    for (double b : config.bandwidth_grid) {
        const double obj = testref::loocv_objective(y, b);
        REQUIRE(std::isfinite(obj));
        if (obj < best) {
            best = obj;
            best_b = b;
        }
    }
    CHECK(cv.bandwidth == best_b);
    CHECK(cv.cv_score == testref::Approx(best).margin(1e-10));
}

TEST_CASE("cross-validation breaks exact ties toward the smallest bandwidth") {
    const std::vector<double> zeros(50, 0.0);
    KernelConfig config;
    config.bandwidth_grid = {0.05, 0.1, 0.2};
    const CvResult cv = loocv_bandwidth(zeros, config);
    CHECK(cv.bandwidth == 0.05);
    CHECK(cv.cv_score == 0.0);
}

TEST_CASE("cross-validation honors the evaluation stride") {
    std::mt19937_64 rng(512);
    const auto y = testref::random_vector(rng, 80, -1.0, 1.0);
    KernelConfig config;
    config.bandwidth_grid = {0.05, 0.12, 0.25};
    config.cv_stride = 3;

    const CvResult cv = loocv_bandwidth(y, config);
    double best = std::numeric_limits<double>::infinity();
    double best_b = 0.0;
    for (double b : config.bandwidth_grid) {
        const double obj = testref::loocv_objective(y, b, 3);
        if (obj < best) {
            best = obj;
            best_b = b;
        }
    }
    CHECK(cv.bandwidth == best_b);
    CHECK(cv.cv_score == testref::Approx(best).margin(1e-10));
}

TEST_CASE("degenerate bandwidths are skipped or rejected") {
    std::mt19937_64 rng(8);
    const auto y = testref::random_vector(rng, 50, 0.0, 1.0);

    KernelConfig config;
    config.bandwidth_grid = {1e-9};
    CHECK_THROWS_AS(loocv_bandwidth(y, config), AllBandwidthsDegenerate);

    config.bandwidth_grid = {1e-9, 0.1};
    const CvResult cv = loocv_bandwidth(y, config);
    CHECK(cv.bandwidth == 0.1);
}

TEST_CASE("probability and moment estimators return well-formed curves") {
    std::mt19937_64 rng(21);
    std::vector<double> raw(120);
    for (double& r : raw) r = (testref::u01(rng) < 0.6) ? testref::normal01(rng) : 0.0;
    const ReturnSeries series = build_series(raw);

    KernelConfig config;
    const CurveEstimate prob = estimate_probability(series, config);
    CHECK(prob.target == CurveTarget::ZeroProbability);
    REQUIRE(prob.values.size() == series.size());
    for (double v : prob.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(std::find(config.default_grid().begin(), config.default_grid().end(),
                    prob.bandwidth) != config.default_grid().end());

    PowerSpec spec;
    spec.delta = 1.5;
    const CurveEstimate moment = estimate_power_moment(series, spec, config);
    CHECK(moment.target == CurveTarget::PowerMoment);
    CHECK(moment.delta == 1.5);
    REQUIRE(moment.values.size() == series.size());
}
