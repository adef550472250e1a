#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "illiqcorr/csv.hpp"
#include "illiqcorr/errors.hpp"
#include "illiqcorr/harness.hpp"
#include "illiqcorr/parallel.hpp"
#include "illiqcorr/simulate.hpp"
#include "report.hpp"

namespace {

using namespace illiq;

// Shared input flags: exactly one of --prices / --returns, optional column
// override (defaults to "price" / "return" to match the documented schema).
struct InputArgs {
    std::string prices_path;
    std::string returns_path;
    std::string column;

    void attach(CLI::App* cmd) {
        auto* p = cmd->add_option("--prices", prices_path,
                                  "CSV with a price column; log-returns are computed");
        auto* r = cmd->add_option("--returns", returns_path, "CSV with a return column");
        cmd->add_option("--column", column, "column name override");
        p->excludes(r);
        r->excludes(p);
    }

    csv::ReturnsFile load() const {
        if (prices_path.empty() == returns_path.empty())
            throw InvalidConfig("exactly one of --prices / --returns is required");
        if (!prices_path.empty())
            return csv::load_prices(prices_path, column.empty() ? "price" : column);
        return csv::load_returns(returns_path, column.empty() ? "return" : column);
    }

    const std::string& path() const { return prices_path.empty() ? returns_path : prices_path; }
};

std::vector<Method> parse_methods(const std::string& csv_list) {
    std::vector<Method> methods;
    std::string token;
    for (char c : csv_list + ",") {
        if (c != ',') {
            token.push_back(c);
            continue;
        }
        if (!token.empty()) methods.push_back(method_from_name(token));
        token.clear();
    }
    if (methods.empty()) throw InvalidConfig("--methods needs at least one method");
    return methods;
}

int run_analyze(const InputArgs& input, cli::AnalysisOptions options, const std::string& out_dir,
                bool to_stdout) {
    const csv::ReturnsFile data = input.load();
    options.input_path = input.path();
    options.column = input.prices_path.empty() ? (input.column.empty() ? "return" : input.column)
                                               : (input.column.empty() ? "price" : input.column);
    options.from_prices = !input.prices_path.empty();

    const cli::AnalysisReport report = cli::analyze(data.returns, options);
    if (to_stdout) {
        cli::write_report_json(report, std::cout);
        return 0;
    }
    const auto written = cli::write_report_files(report, out_dir);
    for (const auto& path : written) std::cerr << "wrote " << path << '\n';
    return 0;
}

int run_simulate(const std::string& dgp_code, std::size_t n, std::uint64_t seed, double delta,
                 const std::string& out_path, bool to_stdout) {
    sim::DgpConfig config = sim::DgpConfig::from_code(dgp_code);
    config.n = n;
    config.seed = seed;
    const sim::SimulatedPanel panel = sim::generate(config, delta);
    if (to_stdout) {
        sim::write_panel_csv(panel, std::cout);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) throw FileNotFound(out_path);
    sim::write_panel_csv(panel, out);
    std::cerr << "wrote " << out_path << '\n';
    return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override, bool to_stdout) {
    mc::ExperimentSpec spec = mc::read_spec_file(config_path);
    if (seed_override) spec.seed = *seed_override;

    const auto t0 = std::chrono::steady_clock::now();
    const mc::ExperimentResult result = mc::run_experiment(spec);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (to_stdout) {
        mc::write_result_text(result, std::cout);
    } else {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const std::string csv_path = (fs::path(out_dir) / "experiment.csv").string();
        const std::string text_path = (fs::path(out_dir) / "experiment.txt").string();
        mc::emit_tables(result, csv_path, text_path);
        std::cerr << "wrote " << csv_path << '\n' << "wrote " << text_path << '\n';
    }
    std::cerr << "experiment finished in " << seconds << "s\n";
    return 0;
}

int run_profile(const InputArgs& input, const std::string& out_dir, bool to_stdout) {
    const csv::ReturnsFile data = input.load();
    const ReturnSeries series = build_series(data.returns);
    const diag::Profile prob = diag::probability_profile(series);
    const diag::Profile abs = diag::absolute_return_profile(series);

    if (to_stdout) {
        diag::write_profile_csv(prob, std::cout);
        std::cout << '\n';
        diag::write_profile_csv(abs, std::cout);
        return 0;
    }
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    for (const auto& [profile, name] :
         {std::pair<const diag::Profile&, const char*>{prob, "profile_probability.csv"},
          std::pair<const diag::Profile&, const char*>{abs, "profile_absolute_return.csv"}}) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path);
        if (!out) throw FileNotFound(path);
        diag::write_profile_csv(profile, out);
        std::cerr << "wrote " << path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power autocorrelations of illiquid asset returns: analysis, simulation and "
                 "Monte Carlo experiments"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: all cores, or ILLIQCORR_THREADS)");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "full analysis of one return series");
    InputArgs analyze_input;
    analyze_input.attach(analyze_cmd);
    cli::AnalysisOptions options;
    std::string methods_list = "classical,rp,rpv";
    std::string analyze_out = "analysis";
    double analyze_bandwidth = 0.0;
    bool analyze_stdout = false;
    analyze_cmd->add_option("--delta", options.delta, "power exponent (default 1)");
    analyze_cmd->add_option("--max-lag", options.max_lag, "portmanteau lags (default 5)");
    analyze_cmd->add_option("--methods", methods_list,
                            "comma list from classical,rp,rpv (default all)");
    analyze_cmd->add_option("--B", options.bootstrap_replicates,
                            "bootstrap replicates (default 499)");
    std::string multiplier_name_arg = "mammen";
    analyze_cmd->add_option("--multiplier", multiplier_name_arg, "mammen or rademacher");
    analyze_cmd->add_option("--alpha", options.alpha, "test level (default 0.05)");
    analyze_cmd->add_option("--seed", options.seed, "bootstrap seed (default 0)");
    analyze_cmd->add_option("--bandwidth", analyze_bandwidth,
                            "fixed kernel bandwidth, skipping cross-validation");
    analyze_cmd->add_option("--out", analyze_out, "output directory (default analysis/)");
    analyze_cmd->add_flag("--stdout", analyze_stdout, "print the JSON report to stdout instead");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "generate one simulated panel");
    std::string dgp_code = "a1";
    std::size_t sim_n = 400;
    std::uint64_t sim_seed = 0;
    double sim_delta = 1.0;
    std::string sim_out = "panel.csv";
    bool sim_stdout = false;
    sim_cmd->add_option("--dgp", dgp_code, "design code a1|a2|b1|b2|c1|c2 (default a1)");
    sim_cmd->add_option("--n", sim_n, "sample size (default 400)");
    sim_cmd->add_option("--seed", sim_seed, "seed (default 0)");
    sim_cmd->add_option("--delta", sim_delta, "exponent of the exported moment curve");
    sim_cmd->add_option("--out", sim_out, "output CSV (default panel.csv)");
    sim_cmd->add_flag("--stdout", sim_stdout, "print the panel CSV to stdout instead");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a Monte Carlo experiment from a config");
    std::string exp_config;
    std::string exp_out = "experiment";
    bool exp_stdout = false;
    std::uint64_t exp_seed = 0;
    exp_cmd->add_option("--config", exp_config, "key = value experiment spec")->required();
    exp_cmd->add_option("--out-dir", exp_out, "output directory (default experiment/)");
    auto* exp_seed_opt = exp_cmd->add_option("--seed", exp_seed, "override the config's seed");
    exp_cmd->add_flag("--stdout", exp_stdout, "print the text table to stdout instead");

    // profile
    auto* prof_cmd = app.add_subcommand("profile", "liquidity profiles of one return series");
    InputArgs prof_input;
    prof_input.attach(prof_cmd);
    std::string prof_out = "profiles";
    bool prof_stdout = false;
    prof_cmd->add_option("--out", prof_out, "output directory (default profiles/)");
    prof_cmd->add_flag("--stdout", prof_stdout, "print both profile CSVs to stdout instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (threads > 0) set_max_threads(threads);
        if (*analyze_cmd) {
            options.methods = parse_methods(methods_list);
            options.multiplier = multiplier_from_name(multiplier_name_arg);
            if (analyze_bandwidth > 0.0) options.fixed_bandwidth = analyze_bandwidth;
            return run_analyze(analyze_input, options, analyze_out, analyze_stdout);
        }
        if (*sim_cmd) return run_simulate(dgp_code, sim_n, sim_seed, sim_delta, sim_out, sim_stdout);
        if (*exp_cmd) {
            std::optional<std::uint64_t> seed_override;
            if (exp_seed_opt->count() > 0) seed_override = exp_seed;
            return run_experiment_cmd(exp_config, exp_out, seed_override, exp_stdout);
        }
        if (*prof_cmd) return run_profile(prof_input, prof_out, prof_stdout);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
