#include "illiqcorr/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "illiqcorr/errors.hpp"
#include "illiqcorr/rng.hpp"
#include "illiqcorr/stats.hpp"

namespace illiq::sim {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// adaptive Simpson quadrature, absolute tolerance tol
double simpson(double (*f)(double, double), double p, double a, double b,
               double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm, p);
    const double frm = f(rm, p);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, p, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, p, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(double (*f)(double, double), double p, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a, p);
    const double fm = f(m, p);
    const double fb = f(b, p);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, p, a, b, fa, fm, fb, whole, tol, 48);
}

double abs_moment_integrand(double x, double delta) {
    return std::pow(x, delta) * normal_pdf(x);
}

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    const double upper = *mid;
    if (n % 2 == 1) return upper;
    auto lower_it = std::max_element(v.begin(), mid);
    return 0.5 * (*lower_it + upper);
}

}  // namespace

double variance_shift_path(double u) {
    if (u <= 0.4) return 1.0;
    if (u <= 0.6) return 5.0 * u - 1.0;
    return 2.0;
}

double prob_shift_path(double u) {
    if (u <= 0.4) return 0.2;
    if (u <= 0.6) return 3.5 * u - 1.2;
    return 0.9;
}

void DgpConfig::validate() const {
    if (n < 10) throw InvalidConfig("simulated series length must be at least 10");
    if (volatility == Volatility::Garch11) {
        if (!(garch.omega > 0.0) || !(garch.alpha >= 0.0) || !(garch.beta >= 0.0))
            throw InvalidConfig("GARCH parameters must be positive");
        if (!(garch.alpha + garch.beta < 1.0))
            throw InvalidConfig("GARCH requires alpha + beta < 1 for stationarity");
    }
    if (probability == ProbRegime::Constant &&
        (!(constant_prob > 0.0) || !(constant_prob <= 1.0)))
        throw InvalidConfig("constant trading probability must lie in (0,1]");
    if (thinning && (!(thinning_keep_prob > 0.0) || !(thinning_keep_prob <= 1.0)))
        throw InvalidConfig("thinning keep probability must lie in (0,1]");
}

std::string DgpConfig::code() const {
    std::string s;
    s += volatility == Volatility::ConstantUnit ? 'a'
         : volatility == Volatility::Garch11   ? 'b'
                                               : 'c';
    s += probability == ProbRegime::Constant ? '1' : '2';
    return s;
}

DgpConfig DgpConfig::from_code(const std::string& code) {
    if (code.size() != 2) throw InvalidConfig("DGP code must look like a1, b2, c2");
    DgpConfig c;
    switch (code[0]) {
        case 'a': c.volatility = Volatility::ConstantUnit; break;
        case 'b': c.volatility = Volatility::Garch11; break;
        case 'c': c.volatility = Volatility::VarianceShift; break;
        default: throw InvalidConfig("unknown volatility case in DGP code: " + code);
    }
    switch (code[1]) {
        case '1': c.probability = ProbRegime::Constant; break;
        case '2': c.probability = ProbRegime::ProbShift; break;
        default: throw InvalidConfig("unknown probability regime in DGP code: " + code);
    }
    return c;
}

double thinning_threshold(double keep_prob) {
    if (!(keep_prob > 0.0) || !(keep_prob <= 1.0))
        throw InvalidConfig("keep probability must lie in (0,1]");
    if (keep_prob == 1.0) return 0.0;
    // P(|eta| <= tau) = 1 - keep  =>  Phi(tau) = 1 - keep/2
    return normal_quantile(1.0 - keep_prob / 2.0);
}

double thinned_normal_abs_moment(double delta, double tau) {
    if (!(delta > 0.0)) throw InvalidConfig("moment exponent must be positive");
    if (!(tau >= 0.0)) throw InvalidConfig("threshold must be nonnegative");
    const double upper = std::max(tau + 12.0, 14.0);
    const double tail_mass = 2.0 * (1.0 - normal_cdf(tau));
    if (!(tail_mass > 0.0)) throw InvalidConfig("threshold keeps no mass");
    const double raw = 2.0 * integrate(abs_moment_integrand, delta, tau, upper, 1e-14);
    return raw / tail_mass;
}

SimulatedPanel generate(const DgpConfig& config, double delta) {
    config.validate();
    const std::size_t n = config.n;

    std::mt19937_64 rng = sub_stream(config.seed, 0x5117u);
    std::normal_distribution<double> normal(0.0, 1.0);

    SimulatedPanel panel;
    panel.latent.resize(n);
    std::vector<double> observed(n);
    std::vector<double> eta;

    if (config.volatility == Volatility::Garch11) {
        const auto& g = config.garch;
        double sigma2 = g.omega / (1.0 - g.alpha - g.beta);
        const std::size_t total = config.garch_burn_in + n;
        for (std::size_t t = 0; t < total; ++t) {
            const double r = std::sqrt(sigma2) * normal(rng);
            if (t >= config.garch_burn_in) panel.latent[t - config.garch_burn_in] = r;
            sigma2 = g.omega + g.alpha * r * r + g.beta * sigma2;
        }
        const double mu = median_of(panel.latent);
        for (std::size_t t = 0; t < n; ++t)
            observed[t] = panel.latent[t] >= mu ? panel.latent[t] : 0.0;
        panel.true_prob_curve.assign(n, 0.5);
        panel.true_moment_curve = std::nullopt;
    } else {
        eta.resize(n);
        for (double& e : eta) e = normal(rng);

        const bool shifted_var = config.volatility == Volatility::VarianceShift;
        for (std::size_t t = 0; t < n; ++t) {
            const double u = static_cast<double>(t + 1) / static_cast<double>(n);
            const double sigma = shifted_var ? variance_shift_path(u) : 1.0;
            panel.latent[t] = sigma * eta[t];
        }

        const double tau = config.thinning ? thinning_threshold(config.thinning_keep_prob) : 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double u = static_cast<double>(t + 1) / static_cast<double>(n);
            const double p = config.probability == ProbRegime::Constant
                                 ? config.constant_prob
                                 : prob_shift_path(u);
            const bool trade = uniform_u01(rng) < p;
            const bool kept = !config.thinning || std::fabs(eta[t]) > tau;
            observed[t] = (trade && kept) ? panel.latent[t] : 0.0;
        }

        TrueCurves curves = true_curves(config, delta);
        panel.true_prob_curve = std::move(curves.prob);
        panel.true_moment_curve = std::move(curves.moment);
    }

    panel.observed = build_series(observed, 0.0);
    return panel;
}

TrueCurves true_curves(const DgpConfig& config, double delta) {
    config.validate();
    if (!(delta > 0.0)) throw InvalidConfig("moment exponent must be positive");
    const std::size_t n = config.n;

    TrueCurves out;
    out.prob.resize(n);

    if (config.volatility == Volatility::Garch11) {
        std::fill(out.prob.begin(), out.prob.end(), 0.5);
        out.moment = std::nullopt;
        return out;
    }

    const double keep = config.thinning ? config.thinning_keep_prob : 1.0;
    const double tau = config.thinning ? thinning_threshold(config.thinning_keep_prob) : 0.0;
    const double eta_moment = thinned_normal_abs_moment(delta, tau);
    const bool shifted_var = config.volatility == Volatility::VarianceShift;

    std::vector<double> moment(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double u = static_cast<double>(t + 1) / static_cast<double>(n);
        const double p = config.probability == ProbRegime::Constant
                             ? config.constant_prob
                             : prob_shift_path(u);
        out.prob[t] = p * keep;
        const double vd = shifted_var ? std::pow(variance_shift_path(u), delta) : 1.0;
        moment[t] = vd * out.prob[t] * eta_moment;
    }
    out.moment = std::move(moment);
    return out;
}

std::vector<double> true_moment_curve(const DgpConfig& config, double delta) {
    if (config.volatility == Volatility::Garch11) throw UnsupportedForGarch();
    return *true_curves(config, delta).moment;
}

void write_panel_csv(const SimulatedPanel& panel, std::ostream& out) {
    const auto saved = out.precision(std::numeric_limits<double>::max_digits10);
    out << "t,latent,observed,a,true_prob\n";
    for (std::size_t t = 0; t < panel.latent.size(); ++t)
        out << (t + 1) << ',' << panel.latent[t] << ',' << panel.observed.values[t] << ','
            << static_cast<int>(panel.observed.indicators[t]) << ','
            << panel.true_prob_curve[t] << '\n';
    out.precision(saved);
}

}  // namespace illiq::sim
