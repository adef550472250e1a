#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "illiqcorr/errors.hpp"
#include "illiqcorr/rng.hpp"
#include "illiqcorr/stats.hpp"

namespace illiq::cli {

namespace {

using nlohmann::json;

double max_identity_deviation(const diag::Profile& profile) {
    double dev = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i)
        dev = std::max(dev, std::fabs(profile.value[i] - profile.s[i]));
    return dev;
}

CurveEstimate fit_curve(const ReturnSeries& series, const PowerSpec& pspec,
                        CurveTarget target, const AnalysisOptions& options) {
    if (!options.fixed_bandwidth) {
        return target == CurveTarget::ZeroProbability
                   ? estimate_probability(series, options.kernel)
                   : estimate_power_moment(series, pspec, options.kernel);
    }
    std::vector<double> response;
    if (target == CurveTarget::ZeroProbability) {
        response.assign(series.indicators.begin(), series.indicators.end());
    } else {
        response = power_transform(series, pspec).values;
    }
    CurveEstimate curve;
    curve.target = target;
    curve.delta = pspec.delta;
    curve.bandwidth = *options.fixed_bandwidth;
    curve.cv_score = std::numeric_limits<double>::quiet_NaN();
    curve.values = smooth(response, curve.bandwidth, options.kernel, target);
    return curve;
}

json band_json(const std::vector<std::pair<double, double>>& bands) {
    json out = json::array();
    for (const auto& [lo, hi] : bands) out.push_back({lo, hi});
    return out;
}

}  // namespace

AnalysisReport analyze(const std::vector<double>& returns, const AnalysisOptions& options) {
    const ReturnSeries series = build_series(returns);
    const std::size_t n = series.size();
    if (n <= options.max_lag + 2) throw InsufficientData(n, options.max_lag + 2);
    const PowerSpec pspec{options.delta, options.max_lag};
    pspec.validate(n);

    AnalysisReport report;
    report.options = options;
    report.n = n;
    report.zero_fraction = series.zero_fraction();
    report.prob_profile = diag::probability_profile(series);
    report.abs_profile = diag::absolute_return_profile(series);

    const bool wants_rp =
        std::find(options.methods.begin(), options.methods.end(), Method::RP) !=
        options.methods.end();
    const bool wants_rpv =
        std::find(options.methods.begin(), options.methods.end(), Method::RPV) !=
        options.methods.end();
    if (wants_rp || wants_rpv)
        report.prob_curve = fit_curve(series, pspec, CurveTarget::ZeroProbability, options);
    if (wants_rpv)
        report.moment_curve = fit_curve(series, pspec, CurveTarget::PowerMoment, options);

    for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
        const Method method = options.methods[mi];
        MethodReport mr;
        mr.method = method;
        if (method == Method::Classical) {
            mr.autocorr = classical_autocorr(power_transform(series, pspec), options.max_lag);
            mr.stat = portmanteau_stat(mr.autocorr);
            mr.chi2 = chi2_test(mr.stat, options.max_lag, options.alpha);
            mr.p_value = mr.chi2->p_value;
            mr.reject = mr.chi2->reject;
            const double half =
                normal_quantile(1.0 - options.alpha / 2.0) / std::sqrt(static_cast<double>(n));
            mr.bands.assign(options.max_lag, {-half, half});
        } else {
            const std::vector<double>& curve = method == Method::RP
                                                   ? report.prob_curve->values
                                                   : report.moment_curve->values;
            mr.autocorr = method == Method::RP ? rp_autocorr(series, pspec, curve)
                                               : rpv_autocorr(series, pspec, curve);
            BootstrapConfig bc;
            bc.B = options.bootstrap_replicates;
            bc.multiplier = options.multiplier;
            bc.alpha = options.alpha;
            bc.seed = mix_seed(options.seed, 1 + static_cast<std::uint64_t>(method));
            mr.bootstrap = run_test(mr.autocorr, bc);
            mr.stat = mr.bootstrap->observed_stat;
            mr.p_value = mr.bootstrap->p_value;
            mr.reject = mr.bootstrap->reject;
            mr.bands = mr.bootstrap->bands;
        }
        report.methods.push_back(std::move(mr));
    }
    return report;
}

void write_report_json(const AnalysisReport& report, std::ostream& out) {
    const AnalysisOptions& options = report.options;
    json j;
    j["input"] = {{"file", options.input_path},
                  {"column", options.column},
                  {"from_prices", options.from_prices},
                  {"n", report.n},
                  {"zero_fraction", report.zero_fraction}};
    j["settings"] = {{"delta", options.delta},
                     {"max_lag", options.max_lag},
                     {"alpha", options.alpha},
                     {"bootstrap_replicates", options.bootstrap_replicates},
                     {"multiplier", multiplier_name(options.multiplier)},
                     {"seed", options.seed}};

    json curves = json::object();
    if (report.prob_curve)
        curves["probability"] = {{"bandwidth", report.prob_curve->bandwidth},
                                 {"cv_score", report.prob_curve->cv_score}};
    if (report.moment_curve)
        curves["power_moment"] = {{"bandwidth", report.moment_curve->bandwidth},
                                  {"cv_score", report.moment_curve->cv_score}};
    j["curves"] = curves;

    json methods = json::object();
    for (const MethodReport& mr : report.methods) {
        json m;
        m["rho"] = mr.autocorr.rho;
        m["portmanteau_stat"] = mr.stat;
        m["p_value"] = mr.p_value;
        m["reject"] = mr.reject;
        m["bands"] = band_json(mr.bands);
        if (mr.chi2) {
            m["test"] = "chi2";
            m["dof"] = mr.chi2->dof;
            m["critical"] = mr.chi2->critical;
        } else {
            m["test"] = "wild_bootstrap";
            m["bootstrap_replicates"] = mr.bootstrap->B;
            m["multiplier"] = multiplier_name(mr.bootstrap->multiplier);
        }
        methods[method_name(mr.method)] = std::move(m);
    }
    j["methods"] = methods;

    j["profiles"] = {
        {"probability_max_identity_deviation", max_identity_deviation(report.prob_profile)},
        {"absolute_return_max_identity_deviation", max_identity_deviation(report.abs_profile)}};

    out << j.dump(2) << '\n';
}

std::vector<std::string> write_report_files(const AnalysisReport& report,
                                            const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    auto open = [&](const std::string& name) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path);
        if (!out) throw FileNotFound(path);
        written.push_back(path);
        return out;
    };

    {
        auto out = open("report.json");
        write_report_json(report, out);
    }
    for (const MethodReport& mr : report.methods) {
        auto out = open("autocorr_" + method_name(mr.method) + ".csv");
        out.precision(std::numeric_limits<double>::max_digits10);
        out << "lag,rho,lower,upper\n";
        for (std::size_t h = 1; h <= mr.autocorr.max_lag(); ++h)
            out << h << ',' << mr.autocorr.rho[h - 1] << ',' << mr.bands[h - 1].first << ','
                << mr.bands[h - 1].second << '\n';
    }
    if (report.prob_curve) {
        auto out = open("curve_probability.csv");
        write_curve_csv(*report.prob_curve, out);
    }
    if (report.moment_curve) {
        auto out = open("curve_power_moment.csv");
        write_curve_csv(*report.moment_curve, out);
    }
    {
        auto out = open("profile_probability.csv");
        write_profile_csv(report.prob_profile, out);
    }
    {
        auto out = open("profile_absolute_return.csv");
        write_profile_csv(report.abs_profile, out);
    }
    return written;
}

}  // namespace illiq::cli
