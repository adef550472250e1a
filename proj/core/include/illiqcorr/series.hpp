#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace illiq {

/**
 * An observed return series r_1..r_n together with its zero-return
 * indicators a_t = 1{r_t != 0}. A zero return is how an illiquid asset
 * shows up in the data: no trade or no price change on day t.
 *
 * Values with |r_t| <= zero_threshold are coerced to exact zero at
 * construction, so downstream code can rely on `indicators[t] == 0` iff
 * `values[t] == 0.0`. Immutable after construction.
 */
struct ReturnSeries {
    std::vector<double> values;
    std::vector<std::uint8_t> indicators;
    double zero_threshold = 0.0;

    std::size_t size() const { return values.size(); }
    std::size_t nonzero_count() const;
    double zero_fraction() const;
};

/**
 * Parameters of a power-autocorrelation analysis: the exponent delta
 * applied to |r_t| and the maximum lag m entering the portmanteau
 * statistic. delta = 2 targets ARCH-type squared-return correlation,
 * delta = 1 the absolute-return (Taylor effect) correlation.
 */
struct PowerSpec {
    double delta = 1.0;
    std::size_t max_lag = 5;

    // Throws InvalidSpec unless delta > 0 and 1 <= max_lag <= n - 2.
    void validate(std::size_t n) const;
};

/** The transformed series |r_t|^delta with its cached mean. */
struct PowerSeries {
    std::vector<double> values;
    double mean = 0.0;
    double delta = 1.0;
};

/**
 * Validate raw returns and derive the zero indicators.
 *
 * @throws EmptySeries, NonFiniteValue, AllZero
 */
ReturnSeries build_series(const std::vector<double>& raw, double zero_threshold = 0.0);

/** Compute |r_t|^delta for every t and cache the mean. */
PowerSeries power_transform(const ReturnSeries& series, const PowerSpec& spec);

}  // namespace illiq
