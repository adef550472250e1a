#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "illiqcorr/bootstrap.hpp"
#include "illiqcorr/diagnostics.hpp"
#include "illiqcorr/kernel.hpp"
#include "illiqcorr/powercorr.hpp"
#include "illiqcorr/series.hpp"

namespace illiq::cli {

struct AnalysisOptions {
    std::string input_path;
    std::string column = "return";
    bool from_prices = false;
    double delta = 1.0;
    std::size_t max_lag = 5;
    std::vector<Method> methods = {Method::Classical, Method::RP, Method::RPV};
    std::size_t bootstrap_replicates = 499;
    MultiplierDist multiplier = MultiplierDist::Mammen;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::optional<double> fixed_bandwidth;
    KernelConfig kernel{};
};

/**
 * One method's results: the autocorrelations, the test decision (chi-square
 * for Classical, wild bootstrap for RP/RPV) and per-lag confidence bands
 * (asymptotic +-z/sqrt(n) for Classical, bootstrap quantiles otherwise).
 */
struct MethodReport {
    Method method = Method::Classical;
    AutocorrSet autocorr;
    double stat = 0.0;
    double p_value = 1.0;
    bool reject = false;
    std::vector<std::pair<double, double>> bands;
    std::optional<Chi2Decision> chi2;
    std::optional<BootstrapOutcome> bootstrap;
};

struct AnalysisReport {
    AnalysisOptions options;
    std::size_t n = 0;
    double zero_fraction = 0.0;
    std::optional<CurveEstimate> prob_curve;    // present when RP or RPV ran
    std::optional<CurveEstimate> moment_curve;  // present when RPV ran
    std::vector<MethodReport> methods;
    diag::Profile prob_profile;
    diag::Profile abs_profile;
};

/** Full analysis of one return series per the options. */
AnalysisReport analyze(const std::vector<double>& returns, const AnalysisOptions& options);

/** Machine-readable report (profiles summarized; full curves go to CSV). */
void write_report_json(const AnalysisReport& report, std::ostream& out);

/**
 * Writes the JSON report plus plot-ready CSVs (per-method autocorrelograms
 * with bands, fitted curves, profiles) into the directory, creating it if
 * needed. Returns the list of files written.
 */
std::vector<std::string> write_report_files(const AnalysisReport& report,
                                            const std::string& out_dir);

}  // namespace illiq::cli
