#include "illiqcorr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "illiqcorr/errors.hpp"

namespace illiq {

double chi2_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(dist, x);
}

double chi2_quantile(double p, double dof) {
    if (p <= 0.0 || p >= 1.0) throw InvalidLevel(p);
    boost::math::chi_squared dist(dof);
    return boost::math::quantile(dist, p);
}

double normal_cdf(double x) {
    boost::math::normal dist;
    return boost::math::cdf(dist, x);
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw InvalidLevel(p);
    boost::math::normal dist;
    return boost::math::quantile(dist, p);
}

double empirical_quantile(std::vector<double> data, double q) {
    if (data.empty()) throw InvalidSpec("quantile of an empty sample");
    if (q < 0.0 || q > 1.0) throw InvalidLevel(q);
    std::sort(data.begin(), data.end());
    const std::size_t n = data.size();
    if (n == 1) return data[0];
    const double pos = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return data[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return data[lo] + frac * (data[lo + 1] - data[lo]);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) throw InvalidSpec("mean of an empty sequence");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace illiq
