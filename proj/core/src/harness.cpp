#include "illiqcorr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "illiqcorr/errors.hpp"
#include "illiqcorr/parallel.hpp"
#include "illiqcorr/rng.hpp"
#include "illiqcorr/stats.hpp"

namespace illiq::mc {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(trim(current));
    return parts;
}

std::uint64_t parse_u64(const std::string& text, const std::string& path, std::size_t line) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path, line, "cannot parse '" + text + "' as a nonnegative integer");
    }
}

double parse_f64(const std::string& text, const std::string& path, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path, line, "cannot parse '" + text + "' as a number");
    }
}

std::string fmt_pct(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

// Largest autocorrelation lag the series supports for this spec: the
// portmanteau range extended to any requested band lag that still fits.
std::size_t lag_span(const ExperimentSpec& spec, std::size_t n) {
    std::size_t span = spec.max_lag;
    for (std::size_t lag : spec.band_lags)
        if (lag <= n - 2) span = std::max(span, lag);
    return span;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (replications < 1) throw InvalidConfig("replication count must be at least 1");
    if (bootstrap_replicates < 99)
        throw InvalidConfig("bootstrap replicate count must be at least 99");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidLevel(alpha);
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidConfig("power exponent must be positive and finite");
    if (max_lag < 1) throw InvalidConfig("portmanteau lag count must be at least 1");
    if (sizes.empty()) throw InvalidConfig("at least one sample size is required");
    for (std::size_t n : sizes)
        if (n <= max_lag + 2)
            throw InvalidConfig("sample size " + std::to_string(n) +
                                " does not exceed max_lag + 2 = " + std::to_string(max_lag + 2));
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            if (methods[i] == methods[j])
                throw InvalidConfig("duplicate method: " + method_name(methods[i]));
    for (std::size_t lag : band_lags)
        if (lag < 1) throw InvalidConfig("band lags must be at least 1");
    if (fixed_bandwidth && !(*fixed_bandwidth > 0.0 && *fixed_bandwidth < 1.0))
        throw InvalidConfig("fixed bandwidth must lie in (0,1)");
    kernel.validate();
    dgp.validate();
}

const CellResult* ExperimentResult::find(Method method, std::size_t n) const {
    for (const auto& cell : cells)
        if (cell.method == method && cell.n == n) return &cell;
    return nullptr;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();

    ExperimentResult result;
    result.spec = spec;

    const std::size_t R = spec.replications;
    const std::size_t n_methods = spec.methods.size();
    const std::size_t n_band = spec.band_lags.size();

    for (std::size_t size_index = 0; size_index < spec.sizes.size(); ++size_index) {
        const std::size_t n = spec.sizes[size_index];
        const std::uint64_t cell_root = mix_seed(spec.seed, size_index + 1);
        const std::size_t span = lag_span(spec, n);
        const double classical_half = normal_quantile(1.0 - spec.alpha / 2.0) /
                                      std::sqrt(static_cast<double>(n));

        // per-replication slots, aggregated after the parallel pass so the
        // result is independent of scheduling
        std::vector<std::vector<std::uint8_t>> reject(n_methods,
                                                      std::vector<std::uint8_t>(R, 0));
        std::vector<std::vector<std::uint8_t>> outside(
            n_methods, std::vector<std::uint8_t>(R * n_band, 0));

        const auto t0 = std::chrono::steady_clock::now();

        parallel_for(R, [&](std::size_t r) {
            try {
                sim::DgpConfig dgp = spec.dgp;
                dgp.n = n;
                dgp.seed = mix_seed(cell_root, r, 1);
                const sim::SimulatedPanel panel = sim::generate(dgp, spec.delta);
                const ReturnSeries& series = panel.observed;
                const PowerSpec pspec{spec.delta, span};

                for (std::size_t mi = 0; mi < n_methods; ++mi) {
                    const Method method = spec.methods[mi];
                    AutocorrSet ac;
                    bool rejected = false;
                    std::vector<std::pair<double, double>> bands;

                    if (method == Method::Classical) {
                        ac = classical_autocorr(power_transform(series, pspec), span);
                        const double stat = portmanteau_stat(ac, spec.max_lag);
                        rejected = chi2_test(stat, spec.max_lag, spec.alpha).reject;
                        bands.assign(span, {-classical_half, classical_half});
                    } else {
                        std::vector<double> curve;
                        if (method == Method::RP) {
                            if (spec.fixed_bandwidth) {
                                std::vector<double> response(series.indicators.begin(),
                                                             series.indicators.end());
                                curve = smooth(response, *spec.fixed_bandwidth, spec.kernel,
                                               CurveTarget::ZeroProbability);
                            } else {
                                curve = estimate_probability(series, spec.kernel).values;
                            }
                        } else {
                            if (spec.fixed_bandwidth) {
                                curve = smooth(power_transform(series, pspec).values,
                                               *spec.fixed_bandwidth, spec.kernel,
                                               CurveTarget::PowerMoment);
                            } else {
                                curve = estimate_power_moment(series, pspec, spec.kernel).values;
                            }
                        }
                        ac = method == Method::RP ? rp_autocorr(series, pspec, curve)
                                                  : rpv_autocorr(series, pspec, curve);

                        BootstrapConfig bc;
                        bc.B = spec.bootstrap_replicates;
                        bc.multiplier = spec.multiplier;
                        bc.alpha = spec.alpha;
                        bc.seed = mix_seed(cell_root, r, 2 + (method == Method::RPV ? 1 : 0));
                        bc.stat_lags = spec.max_lag;
                        const BootstrapOutcome outcome = run_test(ac, bc);
                        rejected = outcome.reject;
                        bands = outcome.bands;
                    }

                    reject[mi][r] = rejected ? 1 : 0;
                    for (std::size_t li = 0; li < n_band; ++li) {
                        const std::size_t lag = spec.band_lags[li];
                        if (lag > n - 2) continue;
                        const double rho = ac.rho[lag - 1];
                        const auto& band = bands[lag - 1];
                        outside[mi][r * n_band + li] =
                            (rho < band.first || rho > band.second) ? 1 : 0;
                    }
                }
            } catch (const DataError& e) {
                throw DataError("n=" + std::to_string(n) + " replication " + std::to_string(r) +
                                ": " + e.what());
            } catch (const NumericalError& e) {
                throw NumericalError("n=" + std::to_string(n) + " replication " +
                                     std::to_string(r) + ": " + e.what());
            } catch (const Error& e) {
                throw Error("n=" + std::to_string(n) + " replication " + std::to_string(r) +
                            ": " + e.what());
            }
        });

        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            CellResult cell;
            cell.method = spec.methods[mi];
            cell.n = n;
            cell.replications = R;
            cell.seconds = seconds;
            cell.band_lags = spec.band_lags;

            std::size_t reject_count = 0;
            for (std::size_t r = 0; r < R; ++r) reject_count += reject[mi][r];
            cell.rejection_percent =
                100.0 * static_cast<double>(reject_count) / static_cast<double>(R);

            cell.outside_band_percent.assign(n_band, kMissing);
            for (std::size_t li = 0; li < n_band; ++li) {
                if (spec.band_lags[li] > n - 2) continue;
                std::size_t count = 0;
                for (std::size_t r = 0; r < R; ++r) count += outside[mi][r * n_band + li];
                cell.outside_band_percent[li] =
                    100.0 * static_cast<double>(count) / static_cast<double>(R);
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

void write_result_csv(const ExperimentResult& result, std::ostream& out) {
    out << "method,n,lag,outside_band_percent,rejection_percent,replications\n";
    for (const auto& cell : result.cells) {
        if (cell.band_lags.empty()) {
            out << method_name(cell.method) << ',' << cell.n << ",,,"
                << fmt_pct(cell.rejection_percent) << ',' << cell.replications << '\n';
            continue;
        }
        for (std::size_t li = 0; li < cell.band_lags.size(); ++li) {
            out << method_name(cell.method) << ',' << cell.n << ',' << cell.band_lags[li] << ','
                << fmt_pct(cell.outside_band_percent[li]) << ','
                << fmt_pct(cell.rejection_percent) << ',' << cell.replications << '\n';
        }
    }
}

void write_result_text(const ExperimentResult& result, std::ostream& out) {
    const ExperimentSpec& spec = result.spec;
    out << "experiment: dgp " << spec.dgp.code() << ", delta " << spec.delta << ", alpha "
        << spec.alpha << ", R " << spec.replications << ", B " << spec.bootstrap_replicates
        << ", portmanteau lags " << spec.max_lag << ", multiplier "
        << multiplier_name(spec.multiplier) << ", seed " << spec.seed << "\n";
    out << "band frequencies: percent of replications outside the nominal "
        << fmt_pct(100.0 * (1.0 - spec.alpha)) << "% band; '-' = lag too large for n\n";

    for (std::size_t size_index = 0; size_index < spec.sizes.size(); ++size_index) {
        const std::size_t n = spec.sizes[size_index];
        out << "\nn = " << n << '\n';
        out << std::left << std::setw(11) << "method" << std::right << std::setw(9) << "reject%";
        for (std::size_t lag : spec.band_lags) {
            std::ostringstream head;
            head << "lag" << lag;
            out << std::setw(9) << head.str();
        }
        out << '\n';
        for (Method method : spec.methods) {
            const CellResult* cell = result.find(method, n);
            if (!cell) continue;
            out << std::left << std::setw(11) << method_name(method) << std::right << std::setw(9)
                << fmt_pct(cell->rejection_percent);
            for (std::size_t li = 0; li < cell->band_lags.size(); ++li) {
                const double v = cell->outside_band_percent[li];
                out << std::setw(9) << (std::isnan(v) ? std::string("-") : fmt_pct(v));
            }
            out << '\n';
        }
    }
}

void emit_tables(const ExperimentResult& result, const std::string& csv_path,
                 const std::string& text_path) {
    std::ofstream csv(csv_path);
    if (!csv) throw FileNotFound(csv_path);
    write_result_csv(result, csv);

    std::ofstream text(text_path);
    if (!text) throw FileNotFound(text_path);
    write_result_text(result, text);
}

ExperimentSpec parse_spec(std::istream& in, const std::string& path) {
    ExperimentSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;

        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ParseError(path, line_no, "expected 'key = value', got '" + text + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(path, line_no, "empty key or value");

        try {
            if (key == "dgp") {
                spec.dgp = sim::DgpConfig::from_code(value);
            } else if (key == "n") {
                spec.sizes.clear();
                for (const auto& part : split_list(value))
                    spec.sizes.push_back(parse_u64(part, path, line_no));
            } else if (key == "replications") {
                spec.replications = parse_u64(value, path, line_no);
            } else if (key == "bootstrap") {
                spec.bootstrap_replicates = parse_u64(value, path, line_no);
            } else if (key == "methods") {
                spec.methods.clear();
                for (const auto& part : split_list(value))
                    spec.methods.push_back(method_from_name(part));
            } else if (key == "alpha") {
                spec.alpha = parse_f64(value, path, line_no);
            } else if (key == "delta") {
                spec.delta = parse_f64(value, path, line_no);
            } else if (key == "max_lag") {
                spec.max_lag = parse_u64(value, path, line_no);
            } else if (key == "band_lags") {
                spec.band_lags.clear();
                for (const auto& part : split_list(value))
                    spec.band_lags.push_back(parse_u64(part, path, line_no));
            } else if (key == "multiplier") {
                spec.multiplier = multiplier_from_name(value);
            } else if (key == "seed") {
                spec.seed = parse_u64(value, path, line_no);
            } else if (key == "fixed_bandwidth") {
                spec.fixed_bandwidth = parse_f64(value, path, line_no);
            } else {
                throw ParseError(path, line_no, "unknown key '" + key + "'");
            }
        } catch (const InvalidConfig& e) {
            throw ParseError(path, line_no, e.what());
        }
    }
    return spec;
}

ExperimentSpec read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    return parse_spec(in, path);
}

}  // namespace illiq::mc
