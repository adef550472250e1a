#pragma once

#include <cstddef>
#include <vector>

namespace illiq {

// Small distribution helpers shared across the library. Chi-square and normal
// functions are evaluated numerically (regularized incomplete gamma and error
// function), not tabulated; accuracy is at machine-precision level and is
// cross-checked in the tests against an independent quadrature oracle.

double chi2_cdf(double x, double dof);
double chi2_quantile(double p, double dof);

double normal_cdf(double x);
double normal_quantile(double p);

// Empirical quantile with linear interpolation between order statistics
// (the common "type 7" convention). data need not be sorted; 0 <= q <= 1.
double empirical_quantile(std::vector<double> data, double q);

// Mean of a sequence; the single accumulation order keeps results identical
// across call sites.
double mean_of(const std::vector<double>& v);

}  // namespace illiq
