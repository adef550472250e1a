#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "illiqcorr/series.hpp"

namespace illiq::sim {

// Latent volatility designs: constant unit variance (a), a GARCH(1,1)
// recursion (b), and a deterministic variance shift on rescaled time (c).
enum class Volatility { ConstantUnit, Garch11, VarianceShift };

// Zero-return probability regimes: constant (1) or a monotone shift (2).
enum class ProbRegime { Constant, ProbShift };

struct Garch11Params {
    double omega = 0.01;
    double alpha = 0.1;
    double beta = 0.8;
};

// Deterministic paths on rescaled time u in (0,1].
// Volatility shift: 1 on (0,0.4], then the line 5u-1, then 2 on (0.6,1].
double variance_shift_path(double u);
// Probability shift: 0.2 on (0,0.4], then the line 3.5u-1.2, then 0.9.
double prob_shift_path(double u);

/**
 * Full description of one simulated design. The short codes a1, a2, b1, b2,
 * c1, c2 combine a volatility letter with a probability digit.
 *
 * Censoring has two mechanisms. Cases (a)/(c) draw a Bernoulli trading
 * indicator from the probability regime and, when thinning is on, zero the
 * return whenever its own driving noise falls inside a symmetric band around
 * zero, calibrated so the band is kept with probability thinning_keep_prob.
 * Case (b) ignores both and censors below the sample median of the latent
 * path, so about half of the returns are zeros.
 */
struct DgpConfig {
    Volatility volatility = Volatility::ConstantUnit;
    ProbRegime probability = ProbRegime::Constant;
    double constant_prob = 0.5;
    Garch11Params garch{};
    bool thinning = true;
    double thinning_keep_prob = 0.9;
    std::size_t garch_burn_in = 500;
    std::size_t n = 400;
    std::uint64_t seed = 0;

    void validate() const;
    std::string code() const;
    static DgpConfig from_code(const std::string& code);
};

struct SimulatedPanel {
    std::vector<double> latent;                       // r-tilde
    ReturnSeries observed;                            // r = a * r-tilde
    std::vector<double> true_prob_curve;              // P(a_t = 1) at t/n
    std::optional<std::vector<double>> true_moment_curve;  // E|r_t|^delta, absent for (b)
};

struct TrueCurves {
    std::vector<double> prob;
    std::optional<std::vector<double>> moment;
};

/** Simulate one panel; the moment curve uses the given exponent. */
SimulatedPanel generate(const DgpConfig& config, double delta = 1.0);

/** Population nuisance curves of the design (moment absent for GARCH). */
TrueCurves true_curves(const DgpConfig& config, double delta);

/**
 * Population moment curve E|r_t|^delta.
 * @throws UnsupportedForGarch for case (b): stochastic volatility admits no
 * deterministic curve.
 */
std::vector<double> true_moment_curve(const DgpConfig& config, double delta);

/** E(|eta|^delta | |eta| > tau) for standard normal eta, by quadrature. */
double thinned_normal_abs_moment(double delta, double tau);

/** The band half-width tau with P(|eta| > tau) = keep_prob. */
double thinning_threshold(double keep_prob);

/** Panel export: rows t,latent,observed,a,true_prob. */
void write_panel_csv(const SimulatedPanel& panel, std::ostream& out);

}  // namespace illiq::sim
