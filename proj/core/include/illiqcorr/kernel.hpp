#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "illiqcorr/series.hpp"

namespace illiq {

enum class KernelType { Gaussian };

enum class CurveTarget { ZeroProbability, PowerMoment };

/**
 * Configuration of the nuisance-curve smoother. The estimators are kernel
 * regressions on rescaled time u = t/n, so bandwidths live in (0,1).
 *
 * normalize_weights: with the default true, each weight row is divided by
 * its sum (Nadaraya-Watson). false keeps the literal (nb)^{-1} K(.) weights,
 * which attenuate near the sample boundary; kept for comparison runs.
 *
 * cv_stride: evaluate the cross-validation sum on every k-th point only.
 * The default 1 is the full leave-one-out objective; larger strides are an
 * opt-in shortcut for very long series (n above ~10^4).
 */
struct KernelConfig {
    KernelType kernel = KernelType::Gaussian;
    std::vector<double> bandwidth_grid = default_grid();
    bool normalize_weights = true;
    std::size_t cv_stride = 1;

    // 30 log-spaced candidates spanning [0.005, 0.5] of rescaled time.
    static std::vector<double> default_grid();

    // Throws InvalidConfig unless the grid is non-empty, strictly increasing
    // and contained in (0,1), and cv_stride >= 1.
    void validate() const;
};

/** A fitted nuisance curve evaluated at every design point t/n. */
struct CurveEstimate {
    CurveTarget target = CurveTarget::ZeroProbability;
    double delta = 1.0;  // exponent of the smoothed |r|^delta, PowerMoment only
    std::vector<double> values;
    double bandwidth = 0.0;
    double cv_score = 0.0;
};

struct CvResult {
    double bandwidth = 0.0;
    double cv_score = 0.0;
};

/**
 * Weight row of the smoother at design point t (0-based), length n.
 * Raw weights are (nb)^{-1} K((t-j)/(nb)); normalization divides by the
 * row sum. Throws DegenerateBandwidth if the row sum underflows to zero.
 */
std::vector<double> kernel_weights(std::size_t t, std::size_t n, double b,
                                   const KernelConfig& config);

/**
 * Kernel regression of the response on rescaled time at bandwidth b.
 * Fitted values for a ZeroProbability target are clamped to [0,1].
 */
std::vector<double> smooth(const std::vector<double>& response, double b,
                           const KernelConfig& config,
                           CurveTarget target = CurveTarget::PowerMoment);

/**
 * Grid search of the leave-one-out cross-validation objective
 *   CV(b) = sum_t (fitted_without_t(t) - response_t)^2.
 * Leaving out observation t renormalizes the weight row over j != t.
 * Ties and the flat-objective case resolve to the smaller bandwidth.
 * Grid points whose weights degenerate are skipped; if all of them fail,
 * AllBandwidthsDegenerate is thrown.
 */
CvResult loocv_bandwidth(const std::vector<double>& response, const KernelConfig& config);

/** LOOCV-selected fit of the zero-return probability curve P(a_t = 1). */
CurveEstimate estimate_probability(const ReturnSeries& series, const KernelConfig& config);

/** LOOCV-selected fit of the power moment curve E|r_t|^delta. */
CurveEstimate estimate_power_moment(const ReturnSeries& series, const PowerSpec& spec,
                                    const KernelConfig& config);

/** Plot-ready export: metadata comment, then rows t,u,fitted. */
void write_curve_csv(const CurveEstimate& curve, std::ostream& out);

std::string curve_target_name(CurveTarget target);

}  // namespace illiq
