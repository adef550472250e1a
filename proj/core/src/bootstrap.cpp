#include "illiqcorr/bootstrap.hpp"

#include <cmath>
#include <ostream>

#include "illiqcorr/errors.hpp"
#include "illiqcorr/parallel.hpp"
#include "illiqcorr/rng.hpp"
#include "illiqcorr/stats.hpp"

namespace illiq {

namespace {

const double kSqrt5 = std::sqrt(5.0);

}  // namespace

std::string multiplier_name(MultiplierDist dist) {
    return dist == MultiplierDist::Mammen ? "mammen" : "rademacher";
}

MultiplierDist multiplier_from_name(const std::string& name) {
    if (name == "mammen") return MultiplierDist::Mammen;
    if (name == "rademacher") return MultiplierDist::Rademacher;
    throw InvalidConfig("unknown multiplier '" + name + "', expected mammen or rademacher");
}

double MammenSupport::value_low() { return -(kSqrt5 - 1.0) / 2.0; }
double MammenSupport::value_high() { return (kSqrt5 + 1.0) / 2.0; }
double MammenSupport::prob_low() { return (kSqrt5 + 1.0) / (2.0 * kSqrt5); }

std::vector<double> draw_multipliers(std::size_t n, MultiplierDist dist,
                                     std::mt19937_64& rng) {
    std::vector<double> xi(n);
    if (dist == MultiplierDist::Mammen) {
        const double lo = MammenSupport::value_low();
        const double hi = MammenSupport::value_high();
        const double p_lo = MammenSupport::prob_low();
        for (double& x : xi) x = uniform_u01(rng) < p_lo ? lo : hi;
    } else {
        for (double& x : xi) x = uniform_u01(rng) < 0.5 ? -1.0 : 1.0;
    }
    return xi;
}

double bootstrap_autocov(const std::vector<double>& centered,
                         const std::vector<double>& xi, std::size_t h) {
    const std::size_t n = centered.size();
    if (xi.size() != n) throw LengthMismatch(centered.size(), xi.size());
    if (h >= n) throw InvalidSpec("bootstrap autocovariance lag exceeds series length");
    double s = 0.0;
    for (std::size_t t = h; t < n; ++t)
        s += xi[t] * centered[t] * xi[t - h] * centered[t - h];
    return s / static_cast<double>(n);
}

BootstrapOutcome run_test(const AutocorrSet& ac, const BootstrapConfig& config) {
    if (config.B < 99) throw InvalidConfig("need at least 99 bootstrap replicates");
    if (!(config.alpha > 0.0) || !(config.alpha < 1.0)) throw InvalidLevel(config.alpha);
    const std::size_t m = ac.max_lag();
    const std::size_t k = config.stat_lags == 0 ? m : config.stat_lags;
    if (k > m) throw InvalidConfig("stat_lags exceeds the computed lag range");

    const std::size_t n = ac.n();
    const std::size_t B = config.B;

    BootstrapOutcome out;
    out.B = B;
    out.seed = config.seed;
    out.multiplier = config.multiplier;
    out.alpha = config.alpha;
    out.stat_lags = k;
    out.observed_stat = portmanteau_stat(ac, k);
    out.replicate_stats.resize(B);

    // replicate autocorrelations, flattened [b * m + (h-1)]
    std::vector<double> rho_star(B * m);

    parallel_for(B, [&](std::size_t b) {
        std::mt19937_64 rng = sub_stream(config.seed, b);
        const std::vector<double> xi = draw_multipliers(n, config.multiplier, rng);

        std::vector<double> d(n);
        for (std::size_t t = 0; t < n; ++t) d[t] = xi[t] * ac.centered[t];

        double denom = ac.gamma0;
        if (config.divide_by_replicate_gamma0) {
            double g0 = 0.0;
            for (double v : d) g0 += v * v;
            denom = g0 / static_cast<double>(n);
        }

        double stat = 0.0;
        for (std::size_t h = 1; h <= m; ++h) {
            double g = 0.0;
            for (std::size_t t = h; t < n; ++t) g += d[t] * d[t - h];
            const double r = g / static_cast<double>(n) / denom;
            rho_star[b * m + (h - 1)] = r;
            if (h <= k) stat += r * r;
        }
        out.replicate_stats[b] = static_cast<double>(n) * stat;
    });

    std::size_t count_ge = 0;
    for (double s : out.replicate_stats)
        if (s >= out.observed_stat) ++count_ge;
    out.p_value = static_cast<double>(1 + count_ge) / static_cast<double>(B + 1);
    out.reject = out.p_value <= config.alpha;

    out.bands.resize(m);
    std::vector<double> column(B);
    for (std::size_t h = 0; h < m; ++h) {
        for (std::size_t b = 0; b < B; ++b) column[b] = rho_star[b * m + h];
        out.bands[h] = {empirical_quantile(column, config.alpha / 2.0),
                        empirical_quantile(column, 1.0 - config.alpha / 2.0)};
    }
    return out;
}

BootstrapOutcome run_test(const ReturnSeries& series, const PowerSpec& spec, Method method,
                          const std::vector<double>& curve, const BootstrapConfig& config) {
    switch (method) {
        case Method::RP:
            return run_test(rp_autocorr(series, spec, curve), config);
        case Method::RPV:
            return run_test(rpv_autocorr(series, spec, curve), config);
        case Method::Classical:
            break;
    }
    throw InvalidSpec("the classical test is chi-square based, not bootstrapped");
}

void write_bands_csv(const AutocorrSet& ac, const BootstrapOutcome& outcome,
                     std::ostream& out) {
    if (outcome.bands.size() != ac.max_lag())
        throw LengthMismatch(outcome.bands.size(), ac.max_lag());
    out << "lag,rho_observed,lower,upper\n";
    for (std::size_t h = 1; h <= ac.max_lag(); ++h)
        out << h << ',' << ac.rho[h - 1] << ',' << outcome.bands[h - 1].first << ','
            << outcome.bands[h - 1].second << '\n';
}

}  // namespace illiq
