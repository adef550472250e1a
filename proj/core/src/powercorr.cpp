#include "illiqcorr/powercorr.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "illiqcorr/errors.hpp"
#include "illiqcorr/stats.hpp"

namespace illiq {

namespace {

constexpr std::size_t kMinNonzeroForMoments = 30;

// n^{-1} sum_{t=h}^{n-1} c_t c_{t-h}  (0-based form of t = 1+h .. n)
double autocov(const std::vector<double>& c, std::size_t h) {
    const std::size_t n = c.size();
    double s = 0.0;
    for (std::size_t t = h; t < n; ++t) s += c[t] * c[t - h];
    return s / static_cast<double>(n);
}

// gamma(0) of an exactly-constant series is 0; rounding of the mean can leave
// it at a meaningless ~(n*eps*scale)^2 instead. Treat anything at that level
// as zero variance.
void check_gamma0(double gamma0, double scale, std::size_t n) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor_sq = 16.0 * static_cast<double>(n) * eps * (std::fabs(scale) + eps);
    if (gamma0 <= floor_sq * floor_sq) throw ZeroVariance();
}

AutocorrSet finish_set(Method method, double delta, std::vector<double> centered,
                       std::size_t m, double scale) {
    AutocorrSet out;
    out.method = method;
    out.delta = delta;
    out.centered = std::move(centered);
    out.gamma0 = autocov(out.centered, 0);
    check_gamma0(out.gamma0, scale, out.centered.size());
    out.rho.resize(m);
    for (std::size_t h = 1; h <= m; ++h) out.rho[h - 1] = autocov(out.centered, h) / out.gamma0;
    return out;
}

void check_prob_curve(const std::vector<double>& curve, std::size_t n) {
    if (curve.size() != n) throw CurveLengthMismatch(curve.size(), n);
    for (double p : curve)
        if (!(p >= 0.0) || !(p <= 1.0) || !std::isfinite(p))
            throw InvalidConfig("probability curve values must lie in [0,1]");
}

void check_moment_curve(const std::vector<double>& curve, std::size_t n) {
    if (curve.size() != n) throw CurveLengthMismatch(curve.size(), n);
    for (double v : curve)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidConfig("moment curve values must be finite and nonnegative");
}

// Sample moments of |r_t|^delta and |r_t|^(2 delta) over {t : a_t = 1}.
struct ConditionalMoments {
    double m1 = 0.0;  // E(|r|^delta   | nonzero)
    double m2 = 0.0;  // E(|r|^2delta  | nonzero)
    std::size_t count = 0;
};

ConditionalMoments nonzero_moments(const ReturnSeries& series, double delta) {
    ConditionalMoments out;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (!series.indicators[t]) continue;
        const double v = std::pow(std::fabs(series.values[t]), delta);
        s1 += v;
        s2 += v * v;
        ++out.count;
    }
    if (out.count < kMinNonzeroForMoments)
        throw TooFewNonzero(out.count, kMinNonzeroForMoments);
    out.m1 = s1 / static_cast<double>(out.count);
    out.m2 = s2 / static_cast<double>(out.count);
    return out;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Classical: return "classical";
        case Method::RP: return "rp";
        case Method::RPV: return "rpv";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "classical") return Method::Classical;
    if (name == "rp") return Method::RP;
    if (name == "rpv") return Method::RPV;
    throw InvalidConfig("unknown method '" + name + "', expected classical, rp or rpv");
}

AutocorrSet classical_autocorr(const PowerSeries& power, std::size_t m) {
    const std::size_t n = power.values.size();
    PowerSpec check{power.delta, m};
    check.validate(n);

    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = power.values[t] - power.mean;
    AutocorrSet out = finish_set(Method::Classical, power.delta, std::move(centered), m, power.mean);

    constexpr double kTol = 1e-9;
    for (double r : out.rho)
        if (std::fabs(r) > 1.0 + kTol)
            throw NumericalError("classical autocorrelation left [-1,1]");
    return out;
}

AutocorrSet rp_autocorr(const ReturnSeries& series, const PowerSpec& spec,
                        const std::vector<double>& prob_curve) {
    const std::size_t n = series.size();
    spec.validate(n);
    check_prob_curve(prob_curve, n);

    const double pbar = mean_of(prob_curve);
    if (!(pbar > 0.0)) throw NonPositiveCurveMean();

    const PowerSeries power = power_transform(series, spec);
    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t)
        centered[t] = power.values[t] - power.mean * prob_curve[t] / pbar;
    return finish_set(Method::RP, spec.delta, std::move(centered), spec.max_lag, power.mean);
}

AutocorrSet rpv_autocorr(const ReturnSeries& series, const PowerSpec& spec,
                         const std::vector<double>& moment_curve) {
    const std::size_t n = series.size();
    spec.validate(n);
    check_moment_curve(moment_curve, n);
    if (!(mean_of(moment_curve) > 0.0)) throw NonPositiveCurveMean();

    const PowerSeries power = power_transform(series, spec);
    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = power.values[t] - moment_curve[t];
    return finish_set(Method::RPV, spec.delta, std::move(centered), spec.max_lag, power.mean);
}

double portmanteau_stat(const AutocorrSet& ac) { return portmanteau_stat(ac, ac.max_lag()); }

double portmanteau_stat(const AutocorrSet& ac, std::size_t lags) {
    if (lags > ac.max_lag())
        throw InvalidSpec("portmanteau statistic requested beyond computed lags");
    double s = 0.0;
    for (std::size_t h = 0; h < lags; ++h) s += ac.rho[h] * ac.rho[h];
    return static_cast<double>(ac.n()) * s;
}

Chi2Decision chi2_test(double stat, std::size_t dof, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw InvalidLevel(alpha);
    if (!(stat >= 0.0) || dof < 1) throw InvalidSpec("portmanteau statistic must be >= 0 with dof >= 1");

    Chi2Decision d;
    d.stat = stat;
    d.dof = dof;
    d.alpha = alpha;
    d.critical = chi2_quantile(1.0 - alpha, static_cast<double>(dof));
    d.p_value = 1.0 - chi2_cdf(stat, static_cast<double>(dof));
    d.reject = stat > d.critical;
    return d;
}

AsymptoticVariance plugin_variance_rp(const ReturnSeries& series, const PowerSpec& spec,
                                      const std::vector<double>& prob_curve) {
    const std::size_t n = series.size();
    spec.validate(n);
    check_prob_curve(prob_curve, n);
    const ConditionalMoments mom = nonzero_moments(series, spec.delta);

    // Riemann sums of powers of the probability curve
    double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0;
    for (double p : prob_curve) {
        const double p2 = p * p;
        g1 += p;
        g2 += p2;
        g3 += p2 * p;
        g4 += p2 * p2;
    }
    const double dn = static_cast<double>(n);
    g1 /= dn;
    g2 /= dn;
    g3 /= dn;
    g4 /= dn;

    const double m1sq = mom.m1 * mom.m1;
    AsymptoticVariance out;
    out.kind = AsymptoticVariance::Kind::RP;
    out.numerator = mom.m2 * mom.m2 * g2 - 2.0 * mom.m2 * m1sq * g3 + m1sq * m1sq * g4;
    const double root = mom.m2 * g1 - m1sq * g2;
    out.denominator = root * root;
    if (!(out.denominator > 0.0))
        throw NumericalError("plug-in variance denominator vanished");
    out.value = out.numerator / out.denominator;
    return out;
}

AsymptoticVariance plugin_variance_rpv(const ReturnSeries& series, const PowerSpec& spec,
                                       const std::vector<double>& moment_curve,
                                       const std::vector<double>& prob_curve) {
    const std::size_t n = series.size();
    spec.validate(n);
    check_moment_curve(moment_curve, n);
    check_prob_curve(prob_curve, n);

    // Split the moment curve into scale and probability parts. The overall
    // normalization of the split cancels in the final ratio, so the unknown
    // constant E(|eta|^delta | nonzero) can be absorbed into the scale.
    constexpr double kProbFloor = 0.01;
    const double vd_floor = 1e-10 * (mean_of(moment_curve) + 1e-300);
    std::vector<double> vd(n);  // v^delta(t/n), up to a constant factor
    for (std::size_t t = 0; t < n; ++t) {
        const double g = std::max(prob_curve[t], kProbFloor);
        vd[t] = std::max(moment_curve[t] / g, vd_floor);
    }

    // moments of the standardized noise from standardized nonzero observations
    double s1 = 0.0, s2 = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (!series.indicators[t]) continue;
        const double s = std::pow(std::fabs(series.values[t]), spec.delta) / vd[t];
        s1 += s;
        s2 += s * s;
        ++count;
    }
    if (count < kMinNonzeroForMoments) throw TooFewNonzero(count, kMinNonzeroForMoments);
    const double n1 = s1 / static_cast<double>(count);
    const double n2 = s2 / static_cast<double>(count);

    // Riemann sums of v^{4d} g^k (numerator) and v^{2d} g^k (denominator)
    double a2 = 0.0, a3 = 0.0, a4 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double g = std::max(prob_curve[t], kProbFloor);
        const double v2 = vd[t] * vd[t];
        const double v4 = v2 * v2;
        const double g2 = g * g;
        a2 += v4 * g2;
        a3 += v4 * g2 * g;
        a4 += v4 * g2 * g2;
        b1 += v2 * g;
        b2 += v2 * g2;
    }
    const double dn = static_cast<double>(n);
    a2 /= dn;
    a3 /= dn;
    a4 /= dn;
    b1 /= dn;
    b2 /= dn;

    const double n1sq = n1 * n1;
    AsymptoticVariance out;
    out.kind = AsymptoticVariance::Kind::RPV;
    out.numerator = n2 * n2 * a2 - 2.0 * n2 * n1sq * a3 + n1sq * n1sq * a4;
    const double root = n2 * b1 - n1sq * b2;
    out.denominator = root * root;
    if (!(out.denominator > 0.0))
        throw NumericalError("plug-in variance denominator vanished");
    out.value = out.numerator / out.denominator;
    return out;
}

void write_autocorr_csv(const AutocorrSet& ac, std::ostream& out) {
    out << "lag,rho,method,delta\n";
    for (std::size_t h = 1; h <= ac.max_lag(); ++h)
        out << h << ',' << ac.rho[h - 1] << ',' << method_name(ac.method) << ','
            << ac.delta << '\n';
}

}  // namespace illiq
