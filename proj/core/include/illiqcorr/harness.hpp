#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "illiqcorr/bootstrap.hpp"
#include "illiqcorr/kernel.hpp"
#include "illiqcorr/powercorr.hpp"
#include "illiqcorr/simulate.hpp"

namespace illiq::mc {

/**
 * One Monte Carlo experiment: a simulation design swept over a list of sample
 * sizes, with every replication running the requested autocorrelation methods
 * through their tests and confidence bands.
 *
 * Nuisance curves are re-estimated per replication with leave-one-out
 * cross-validated bandwidths, which is the expensive, faithful mode. Setting
 * fixed_bandwidth skips the bandwidth search (smoke-test mode).
 *
 * band_lags lists the lags whose outside-band frequency is recorded. A lag
 * too large for a given sample size (lag > n - 2) yields a missing cell, not
 * a zero. The portmanteau tests always use the first max_lag lags.
 */
struct ExperimentSpec {
    sim::DgpConfig dgp;                     // template; n and seed set per run
    std::vector<std::size_t> sizes = {400};
    std::size_t replications = 400;
    std::size_t bootstrap_replicates = 499;
    std::vector<Method> methods = {Method::Classical, Method::RP, Method::RPV};
    double alpha = 0.05;
    double delta = 1.0;
    std::size_t max_lag = 5;
    std::vector<std::size_t> band_lags = {1, 2, 3, 4, 5};
    MultiplierDist multiplier = MultiplierDist::Mammen;
    std::uint64_t seed = 0;
    KernelConfig kernel{};
    std::optional<double> fixed_bandwidth;

    // Throws InvalidConfig unless replications >= 1, the method list is
    // duplicate-free (empty is allowed and yields an empty result), every
    // size exceeds max_lag + 2, and the level, exponent and bandwidth are in
    // range.
    void validate() const;
};

/**
 * Aggregates for one (method, sample size) pair. outside_band_percent is
 * aligned with band_lags; missing cells hold NaN. seconds is the wall time of
 * the whole sample-size pass (methods share one pass over the replications),
 * recorded here for reporting but excluded from the table files so those stay
 * byte-reproducible.
 */
struct CellResult {
    Method method = Method::Classical;
    std::size_t n = 0;
    double rejection_percent = 0.0;
    std::vector<std::size_t> band_lags;
    std::vector<double> outside_band_percent;
    std::size_t replications = 0;
    double seconds = 0.0;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<CellResult> cells;  // ordered by (size, method) as listed in spec

    const CellResult* find(Method method, std::size_t n) const;
};

/**
 * Runs the full experiment. Replications are independent jobs on seeded
 * sub-streams, so the result is identical for any worker count. A failure in
 * any replication aborts the run with the sample size and replication index
 * prepended to the diagnostic.
 */
ExperimentResult run_experiment(const ExperimentSpec& spec);

/** CSV rendering, one row per (method, n, lag); header always present. */
void write_result_csv(const ExperimentResult& result, std::ostream& out);

/** Aligned-text rendering, one block per sample size. */
void write_result_text(const ExperimentResult& result, std::ostream& out);

/** Writes both renderings; throws FileNotFound if a path cannot be opened. */
void emit_tables(const ExperimentResult& result, const std::string& csv_path,
                 const std::string& text_path);

/**
 * Parses a key = value experiment config. Lines starting with '#' and blank
 * lines are ignored; lists are comma-separated. Keys:
 *   dgp          design code a1|a2|b1|b2|c1|c2        (default a1)
 *   n            sample sizes, e.g. 100,200,400       (default 400)
 *   replications Monte Carlo replications R           (default 400)
 *   bootstrap    bootstrap replicates B               (default 499)
 *   methods      subset of classical,rp,rpv           (default all three)
 *   alpha        test level in (0,1)                  (default 0.05)
 *   delta        power exponent                       (default 1)
 *   max_lag      portmanteau lags m                   (default 5)
 *   band_lags    lags tracked for band coverage       (default 1,2,3,4,5)
 *   multiplier   mammen|rademacher                    (default mammen)
 *   seed         root seed                            (default 0)
 *   fixed_bandwidth   skip cross-validation at this bandwidth (default unset)
 * Unknown keys raise ParseError with the line number.
 */
ExperimentSpec parse_spec(std::istream& in, const std::string& path_for_errors);

/** File wrapper around parse_spec; throws FileNotFound. */
ExperimentSpec read_spec_file(const std::string& path);

}  // namespace illiq::mc
