#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "illiqcorr/series.hpp"

namespace illiq {

// The three autocorrelation families. Classical centers |r_t|^delta by its
// global mean and is valid only under a constant zero-return probability and
// constant variance. RP recenters by the (possibly time-varying) zero-return
// probability curve; RPV recenters by the pointwise power moment curve and is
// additionally robust to a time-varying unconditional variance. RP and RPV
// accept either a known curve (oracle mode, for simulations) or an estimated
// one (adaptive mode); the formulas are identical.
enum class Method { Classical, RP, RPV };

std::string method_name(Method m);

/** Inverse of method_name ("classical", "rp", "rpv"); throws InvalidConfig. */
Method method_from_name(const std::string& name);

/**
 * Power autocorrelations rho(1..m) of one method, with the ingredients the
 * wild bootstrap reuses: the per-t centered values and the lag-0
 * autocovariance. All autocovariances use the n^{-1} normalization and the
 * summation range t = 1+h..n; there is no (n-h)^{-1} small-sample correction.
 *
 * Only the Classical rho is a true correlation bounded by 1; curve centering
 * can push RP/RPV ratios slightly outside [-1,1], which is expected and not
 * clamped.
 */
struct AutocorrSet {
    Method method = Method::Classical;
    double delta = 1.0;
    std::vector<double> rho;       // rho(1), ..., rho(m)
    double gamma0 = 0.0;
    std::vector<double> centered;  // c_t, t = 1..n

    std::size_t n() const { return centered.size(); }
    std::size_t max_lag() const { return rho.size(); }
};

/** Outcome of the chi-square portmanteau test. */
struct Chi2Decision {
    double stat = 0.0;
    std::size_t dof = 0;
    double alpha = 0.0;
    double critical = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

/**
 * Plug-in estimate of the asymptotic variance of sqrt(n) * rho(h) at a fixed
 * lag: a ratio of two moment functionals of the nuisance curve(s). Equals 1
 * when the curves are constant (the standard i.i.d.-sampling case).
 */
struct AsymptoticVariance {
    enum class Kind { RP, RPV };
    Kind kind = Kind::RP;
    double numerator = 0.0;
    double denominator = 0.0;
    double value = 0.0;
};

/**
 * Classical power autocorrelations:
 *   gamma(h) = n^{-1} sum_{t=1+h}^{n} (|r_t|^d - rbar)(|r_{t-h}|^d - rbar).
 * @throws InvalidSpec, ZeroVariance
 */
AutocorrSet classical_autocorr(const PowerSeries& power, std::size_t m);

/**
 * Probability-robust (RP) power autocorrelations. The centering term at t is
 * rbar * p_t / pbar where p is the zero-return probability curve and pbar its
 * mean, so a time-varying trading probability no longer masquerades as serial
 * correlation.
 * @throws CurveLengthMismatch, NonPositiveCurveMean, ZeroVariance
 */
AutocorrSet rp_autocorr(const ReturnSeries& series, const PowerSpec& spec,
                        const std::vector<double>& prob_curve);

/**
 * Probability-and-variance-robust (RPV) power autocorrelations. Centering
 * subtracts the pointwise moment curve E|r_t|^delta.
 * @throws CurveLengthMismatch, NonPositiveCurveMean, ZeroVariance
 */
AutocorrSet rpv_autocorr(const ReturnSeries& series, const PowerSpec& spec,
                         const std::vector<double>& moment_curve);

/** Portmanteau statistic n * sum_h rho(h)^2 over all lags of the set. */
double portmanteau_stat(const AutocorrSet& ac);

/** Same statistic restricted to the first `lags` lags. */
double portmanteau_stat(const AutocorrSet& ac, std::size_t lags);

/**
 * Chi-square test of the portmanteau statistic against the chi2(m) limit.
 * @throws InvalidLevel
 */
Chi2Decision chi2_test(double stat, std::size_t dof, double alpha);

/**
 * Plug-in asymptotic variance of sqrt(n) * rho_rp(h). Conditional moments of
 * |r|^delta given a nonzero return are sample means over the nonzero
 * observations; curve integrals are Riemann sums n^{-1} sum_t p_t^k.
 * @throws TooFewNonzero, CurveLengthMismatch
 */
AsymptoticVariance plugin_variance_rp(const ReturnSeries& series, const PowerSpec& spec,
                                      const std::vector<double>& prob_curve);

/**
 * Plug-in asymptotic variance of sqrt(n) * rho_rpv(h). The volatility-scale
 * factor v^delta(t/n) is recovered as moment_curve / prob_curve (probability
 * floored at 0.01 to avoid blow-up; diagnostic use only) and the moments of
 * the standardized noise come from the standardized nonzero observations.
 * @throws TooFewNonzero, CurveLengthMismatch
 */
AsymptoticVariance plugin_variance_rpv(const ReturnSeries& series, const PowerSpec& spec,
                                       const std::vector<double>& moment_curve,
                                       const std::vector<double>& prob_curve);

/** Plot-ready export: rows lag,rho,method,delta. */
void write_autocorr_csv(const AutocorrSet& ac, std::ostream& out);

}  // namespace illiq
