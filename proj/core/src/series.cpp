#include "illiqcorr/series.hpp"

#include <algorithm>
#include <cmath>

#include "illiqcorr/errors.hpp"

namespace illiq {

std::size_t ReturnSeries::nonzero_count() const {
    return static_cast<std::size_t>(
        std::count(indicators.begin(), indicators.end(), std::uint8_t{1}));
}

double ReturnSeries::zero_fraction() const {
    if (values.empty()) return 0.0;
    return 1.0 - static_cast<double>(nonzero_count()) / static_cast<double>(values.size());
}

void PowerSpec::validate(std::size_t n) const {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidSpec("power exponent must be a positive finite real");
    if (max_lag < 1 || max_lag + 2 > n)
        throw InvalidSpec("max lag must satisfy 1 <= m <= n - 2");
}

ReturnSeries build_series(const std::vector<double>& raw, double zero_threshold) {
    if (raw.empty()) throw EmptySeries();
    if (!(zero_threshold >= 0.0) || !std::isfinite(zero_threshold))
        throw InvalidSpec("zero threshold must be finite and nonnegative");

    ReturnSeries out;
    out.zero_threshold = zero_threshold;
    out.values.resize(raw.size());
    out.indicators.resize(raw.size());

    std::size_t nonzero = 0;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        const double r = raw[t];
        if (!std::isfinite(r)) throw NonFiniteValue(t);
        if (std::fabs(r) <= zero_threshold) {
            out.values[t] = 0.0;
            out.indicators[t] = 0;
        } else {
            out.values[t] = r;
            out.indicators[t] = 1;
            ++nonzero;
        }
    }
    if (nonzero == 0) throw AllZero();
    return out;
}

PowerSeries power_transform(const ReturnSeries& series, const PowerSpec& spec) {
    spec.validate(series.size());

    PowerSeries out;
    out.delta = spec.delta;
    out.values.resize(series.size());

    double sum = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        // |0|^delta is exactly 0 for every delta > 0; avoid pow(0, d) edge cases.
        const double v = series.indicators[t]
                             ? std::pow(std::fabs(series.values[t]), spec.delta)
                             : 0.0;
        out.values[t] = v;
        sum += v;
    }
    out.mean = sum / static_cast<double>(series.size());
    return out;
}

}  // namespace illiq
