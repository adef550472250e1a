#include "illiqcorr/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "illiqcorr/errors.hpp"

namespace illiq {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double gaussian(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// The design is the regular grid t/n, so a weight depends on (t - j) only.
// One kernel evaluation per distance serves the whole smooth; beyond
// kTailSigmas standard deviations the Gaussian tail is far below machine
// precision and the convolution window is cut there.
constexpr double kTailSigmas = 11.0;

struct DistanceTable {
    std::vector<double> w;  // w[d] = (nb)^{-1} K(d / (nb)), d = 0..radius
    std::size_t radius = 0;
};

DistanceTable build_table(std::size_t n, double b) {
    const double nb = static_cast<double>(n) * b;
    auto radius = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n - 1), std::ceil(kTailSigmas * nb)));
    DistanceTable t;
    t.radius = radius;
    t.w.resize(radius + 1);
    for (std::size_t d = 0; d <= radius; ++d)
        t.w[d] = gaussian(static_cast<double>(d) / nb) / nb;
    return t;
}

// Row sum and weighted response sum at design point t, fixed j-ascending order.
inline void row_sums(const DistanceTable& tab, const std::vector<double>& y,
                     std::size_t t, double& wsum, double& ysum) {
    const std::size_t n = y.size();
    const std::size_t lo = t > tab.radius ? t - tab.radius : 0;
    const std::size_t hi = std::min(n - 1, t + tab.radius);
    wsum = 0.0;
    ysum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
        const double w = tab.w[j > t ? j - t : t - j];
        wsum += w;
        ysum += w * y[j];
    }
}

void check_bandwidth(double b) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw InvalidConfig("bandwidth must be a positive finite real");
}

}  // namespace

std::vector<double> KernelConfig::default_grid() {
    constexpr std::size_t kPoints = 30;
    constexpr double kLo = 0.005;
    constexpr double kHi = 0.5;
    std::vector<double> grid(kPoints);
    const double step = std::log(kHi / kLo) / static_cast<double>(kPoints - 1);
    for (std::size_t i = 0; i < kPoints; ++i)
        grid[i] = kLo * std::exp(step * static_cast<double>(i));
    grid.back() = kHi;
    return grid;
}

void KernelConfig::validate() const {
    if (bandwidth_grid.empty()) throw InvalidConfig("bandwidth grid is empty");
    double prev = 0.0;
    for (double b : bandwidth_grid) {
        if (!(b > 0.0) || !(b < 1.0) || !std::isfinite(b))
            throw InvalidConfig("bandwidth grid values must lie in (0,1)");
        if (b <= prev) throw InvalidConfig("bandwidth grid must be strictly increasing");
        prev = b;
    }
    if (cv_stride < 1) throw InvalidConfig("cv_stride must be at least 1");
}

std::vector<double> kernel_weights(std::size_t t, std::size_t n, double b,
                                   const KernelConfig& config) {
    config.validate();
    check_bandwidth(b);
    if (n == 0 || t >= n) throw InvalidConfig("design index out of range");

    const DistanceTable tab = build_table(n, b);
    std::vector<double> row(n, 0.0);
    double wsum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t d = j > t ? j - t : t - j;
        if (d <= tab.radius) {
            row[j] = tab.w[d];
            wsum += row[j];
        }
    }
    if (config.normalize_weights) {
        if (wsum <= 0.0) throw DegenerateBandwidth(b);
        for (double& w : row) w /= wsum;
    }
    return row;
}

std::vector<double> smooth(const std::vector<double>& response, double b,
                           const KernelConfig& config, CurveTarget target) {
    config.validate();
    check_bandwidth(b);
    const std::size_t n = response.size();
    if (n < 2) throw InvalidConfig("smoothing needs at least 2 observations");

    const DistanceTable tab = build_table(n, b);
    std::vector<double> fitted(n);
    for (std::size_t t = 0; t < n; ++t) {
        double wsum, ysum;
        row_sums(tab, response, t, wsum, ysum);
        if (config.normalize_weights) {
            if (wsum <= 0.0) throw DegenerateBandwidth(b);
            fitted[t] = ysum / wsum;
        } else {
            // raw weights already carry the (nb)^{-1} factor
            fitted[t] = ysum;
        }
    }
    if (target == CurveTarget::ZeroProbability)
        for (double& v : fitted) v = std::clamp(v, 0.0, 1.0);
    return fitted;
}

CvResult loocv_bandwidth(const std::vector<double>& response, const KernelConfig& config) {
    config.validate();
    const std::size_t n = response.size();
    if (n < 3) throw InvalidConfig("cross-validation needs at least 3 observations");

    CvResult best{0.0, std::numeric_limits<double>::infinity()};
    bool any_valid = false;

    for (double b : config.bandwidth_grid) {
        const DistanceTable tab = build_table(n, b);
        const double w0 = tab.w[0];
        double cv = 0.0;
        bool degenerate = false;

        for (std::size_t t = 0; t < n; t += config.cv_stride) {
            double wsum, ysum;
            row_sums(tab, response, t, wsum, ysum);
            double fit_without_t;
            if (config.normalize_weights) {
                const double denom = wsum - w0;
                if (denom <= 0.0) {
                    degenerate = true;
                    break;
                }
                fit_without_t = (ysum - w0 * response[t]) / denom;
            } else {
                fit_without_t = ysum - w0 * response[t];
            }
            const double e = fit_without_t - response[t];
            cv += e * e;
        }

        if (degenerate || !std::isfinite(cv)) continue;
        any_valid = true;
        // strict comparison over the ascending grid: ties keep the smaller b
        if (cv < best.cv_score) best = {b, cv};
    }

    if (!any_valid) throw AllBandwidthsDegenerate();
    return best;
}

CurveEstimate estimate_probability(const ReturnSeries& series, const KernelConfig& config) {
    std::vector<double> response(series.size());
    for (std::size_t t = 0; t < series.size(); ++t)
        response[t] = static_cast<double>(series.indicators[t]);

    const CvResult cv = loocv_bandwidth(response, config);
    CurveEstimate est;
    est.target = CurveTarget::ZeroProbability;
    est.values = smooth(response, cv.bandwidth, config, CurveTarget::ZeroProbability);
    est.bandwidth = cv.bandwidth;
    est.cv_score = cv.cv_score;
    return est;
}

CurveEstimate estimate_power_moment(const ReturnSeries& series, const PowerSpec& spec,
                                    const KernelConfig& config) {
    const PowerSeries power = power_transform(series, spec);
    const CvResult cv = loocv_bandwidth(power.values, config);
    CurveEstimate est;
    est.target = CurveTarget::PowerMoment;
    est.delta = spec.delta;
    est.values = smooth(power.values, cv.bandwidth, config, CurveTarget::PowerMoment);
    est.bandwidth = cv.bandwidth;
    est.cv_score = cv.cv_score;
    return est;
}

std::string curve_target_name(CurveTarget target) {
    return target == CurveTarget::ZeroProbability ? "zero_probability" : "power_moment";
}

void write_curve_csv(const CurveEstimate& curve, std::ostream& out) {
    const std::size_t n = curve.values.size();
    const auto saved = out.precision(std::numeric_limits<double>::max_digits10);
    out << "# target=" << curve_target_name(curve.target);
    if (curve.target == CurveTarget::PowerMoment) out << " delta=" << curve.delta;
    out << " bandwidth=" << curve.bandwidth << " cv_score=" << curve.cv_score << '\n';
    out << "t,u,fitted\n";
    for (std::size_t t = 0; t < n; ++t) {
        out << (t + 1) << ',' << static_cast<double>(t + 1) / static_cast<double>(n)
            << ',' << curve.values[t] << '\n';
    }
    out.precision(saved);
}

}  // namespace illiq
