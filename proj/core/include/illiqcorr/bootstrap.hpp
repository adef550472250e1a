#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "illiqcorr/powercorr.hpp"
#include "illiqcorr/series.hpp"

namespace illiq {

// External wild-bootstrap multipliers, i.i.d. with mean 0 and variance 1.
enum class MultiplierDist { Mammen, Rademacher };

std::string multiplier_name(MultiplierDist dist);

/** Inverse of multiplier_name; throws InvalidConfig. */
MultiplierDist multiplier_from_name(const std::string& name);

// Two-point support of the Mammen distribution:
//   P(xi = -(sqrt5-1)/2) = (sqrt5+1)/(2 sqrt5),
//   P(xi =  (sqrt5+1)/2) = (sqrt5-1)/(2 sqrt5).
// These probabilities make E(xi) = 0, E(xi^2) = 1 and E(xi^3) = 1.
struct MammenSupport {
    static double value_low();
    static double value_high();
    static double prob_low();
};

struct BootstrapConfig {
    std::size_t B = 499;
    MultiplierDist multiplier = MultiplierDist::Mammen;
    double alpha = 0.05;
    std::uint64_t seed = 0;

    // Number of leading lags entering the portmanteau statistic; 0 means all
    // lags of the autocorrelation set. Bands always cover every lag, so one
    // bootstrap pass can test at m lags while banding a longer lag range.
    std::size_t stat_lags = 0;

    // Replicate autocorrelations divide gamma*(h) by the observed gamma(0) by
    // default, keeping the bands centered at zero. true divides by the
    // replicate's own gamma*(0) instead (sensitivity analysis).
    bool divide_by_replicate_gamma0 = false;
};

struct BootstrapOutcome {
    double observed_stat = 0.0;
    std::vector<double> replicate_stats;               // length B
    double p_value = 1.0;
    std::vector<std::pair<double, double>> bands;      // per lag: (lower, upper)
    std::size_t B = 0;
    std::uint64_t seed = 0;
    MultiplierDist multiplier = MultiplierDist::Mammen;
    double alpha = 0.0;
    std::size_t stat_lags = 0;
    bool reject = false;                               // p_value <= alpha
};

/** n i.i.d. multiplier draws from the given engine. */
std::vector<double> draw_multipliers(std::size_t n, MultiplierDist dist,
                                     std::mt19937_64& rng);

/**
 * Wild-bootstrap autocovariance at lag h:
 *   gamma*(h) = n^{-1} sum_{t=1+h}^{n} xi_t c_t xi_{t-h} c_{t-h}
 * over the centered values c of an AutocorrSet.
 * @throws LengthMismatch
 */
double bootstrap_autocov(const std::vector<double>& centered,
                         const std::vector<double>& xi, std::size_t h);

/**
 * Full bootstrap test on an already-computed autocorrelation set. Replicate b
 * runs on its own RNG stream keyed by (config.seed, b), so the outcome is
 * bitwise identical for any worker count. p_value uses the finite-sample
 * convention (1 + #{S* >= S}) / (B + 1); bands are the empirical
 * (alpha/2, 1-alpha/2) quantiles of the replicate autocorrelations per lag.
 * @throws InvalidConfig (B < 99), InvalidLevel
 */
BootstrapOutcome run_test(const AutocorrSet& ac, const BootstrapConfig& config);

/**
 * Convenience wrapper: builds the RP or RPV autocorrelations from the series
 * and nuisance curve, then runs the bootstrap test. Classical has a chi-square
 * limit and takes no bootstrap; requesting it here throws InvalidSpec.
 */
BootstrapOutcome run_test(const ReturnSeries& series, const PowerSpec& spec, Method method,
                          const std::vector<double>& curve, const BootstrapConfig& config);

/** Band export: rows lag,rho_observed,lower,upper. */
void write_bands_csv(const AutocorrSet& ac, const BootstrapOutcome& outcome,
                     std::ostream& out);

}  // namespace illiq
