#pragma once

// Indicators of the high-probability events used in the variance argument and
// seeded Monte Carlo estimators of their frequencies, of gamma_l and of
// VAR[L_n]. Replicate r of a run with master seed s draws X and Y from
// replicate_seeds(s, r); every estimator is deterministic in (parameters, s).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blocklcs/block_alignment.hpp"
#include "blocklcs/blockmodel.hpp"
#include "blocklcs/modification.hpp"
#include "blocklcs/stats.hpp"

namespace blocklcs {

/// C^n: N^X_n and N^Y_n both lie in I_n.
bool event_C(const BlockSequence& x, const BlockSequence& y, int l);

/// Proportions of lengths l-1, l, l+1 among the first m blocks of both
/// sequences are all within delta of 1/3. InvalidParameter when m is 0 or
/// exceeds either length list.
bool event_D(const std::vector<int>& x_lengths, const std::vector<int>& y_lengths, int l, double delta,
             std::size_t m);

/// D^n(delta): event_D for every integer m >= 1 in I_n. The length lists must
/// reach the upper end of I_n.
bool event_D_n(const std::vector<int>& x_lengths, const std::vector<int>& y_lengths, int l, double delta,
               std::size_t n);

/// Number of blocks needed by event_D_n: floor of the upper end of I_n.
std::size_t event_D_blocks(std::size_t n, int l);

/// G^n(delta): N^Y_n / N^X_n <= 1 + delta. DegenerateInput when N^X_n = 0.
bool event_G(const BlockSequence& x, const BlockSequence& y, double delta);

enum class AlignmentMode {
    AllOptimal,  ///< every optimal alignment enumerated
    Leftmost     ///< the leftmost optimal alignment stands in for all of them
};

const char* to_string(AlignmentMode mode) noexcept;

struct AlignmentEventResult {
    bool holds = true;
    AlignmentMode mode = AlignmentMode::Leftmost;
    std::size_t alignments = 0;
    bool complete = true;  ///< false when the enumeration hit its count cap
};

struct AlignmentEventOptions {
    std::size_t enumeration_guard = kDefaultEnumerationGuard;  ///< enumerate all when n <= guard
    std::size_t max_alignments = 100000;
};

/// F^n(q): q1 <= q and q2 <= q on the analyzed optimal alignment(s).
AlignmentEventResult event_F(const BlockSequence& x, const BlockSequence& y, int l, double q,
                             const AlignmentEventOptions& options = {});

/// J^n(delta): delta1 <= delta and delta2 <= delta on the analyzed alignment(s).
AlignmentEventResult event_J(const BlockSequence& x, const BlockSequence& y, int l, double delta,
                             const AlignmentEventOptions& options = {});

struct EventReport {
    std::string event_name;
    std::map<std::string, double> parameters;
    std::size_t replicates = 0;
    std::size_t holds = 0;
    double hold_frequency = 0.0;
    std::vector<std::uint64_t> failures;  ///< replicate indices
    std::string mode;                     ///< alignment mode, empty for non-alignment events
};

struct EventsConfig {
    int l = 6;
    std::size_t n = 100000;
    std::size_t replicates = 100;
    std::uint64_t seed = 1;
    double delta = 0.05;
    double q = -1.0;  ///< negative: (4/9)/(l-1) + 0.02
    bool alignment_events = false;  ///< also evaluate F and J
    AlignmentEventOptions alignment;
    unsigned jobs = 1;
};

/// Per-replicate indicator row: replicate, seed_x, seed_y, event, holds.
struct EventRow {
    std::size_t replicate;
    std::uint64_t seed_x;
    std::uint64_t seed_y;
    std::string event;
    bool holds;
};

struct EventsRun {
    std::vector<EventReport> reports;  ///< C, D, G, then F and J when requested
    std::vector<EventRow> rows;
};

EventsRun run_events(const EventsConfig& config);

struct GammaEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::vector<double> ratios;  ///< L_n / n per replicate
};

/// Mean and standard error of L_n / n. InvalidParameter when replicates < 2.
GammaEstimate estimate_gamma(int l, std::size_t n, std::size_t replicates, std::uint64_t seed, unsigned jobs = 1);

/// L_n of every replicate.
std::vector<std::size_t> sample_lcs(int l, std::size_t n, std::size_t replicates, std::uint64_t seed,
                                    unsigned jobs = 1);

struct VarianceRow {
    std::size_t n = 0;
    std::uint64_t seed = 0;  ///< master seed of this grid point
    double mean = 0.0;
    double variance = 0.0;
    double variance_over_n = 0.0;
    ConfidenceInterval variance_ci{};
    std::vector<double> values;
};

struct VarianceReport {
    std::vector<VarianceRow> rows;
    double slope = 0.0;  ///< least squares of log VAR on log n
    ConfidenceInterval slope_ci{};
    double ratio_spread = 0.0;  ///< max / min of VAR/n over the grid
    std::size_t bootstrap_resamples = 0;
};

/// Grid point i uses master seed derive_seed(seed, i). InvalidParameter when
/// replicates < 30 or some n < l.
VarianceReport estimate_variance(int l, const std::vector<std::size_t>& n_grid, std::size_t replicates,
                                 std::uint64_t seed, unsigned jobs = 1, std::size_t bootstrap_resamples = 1000);

/// Variance report computed from given samples (one vector per grid point).
VarianceReport variance_from_samples(const std::vector<std::size_t>& n_grid,
                                     const std::vector<std::vector<double>>& samples, std::uint64_t seed,
                                     std::size_t bootstrap_resamples = 1000);

struct BiasConfig {
    int l = 6;
    std::size_t n = 10000;
    std::size_t replicates = 200;
    std::uint64_t seed = 7;
    ConditionalOptions conditional;  ///< seed is replaced by each replicate's aux seed
    unsigned jobs = 1;
};

struct BiasRun {
    std::vector<BiasRecord> records;
    std::size_t defined = 0;
    std::size_t positive = 0;
    std::size_t undefined = 0;
    double positive_fraction = 0.0;  ///< positive / defined
    double mean_expectation = 0.0;   ///< over defined replicates
};

/// The bias event: E[L~ - L | X, Y] > 0, per replicate.
BiasRun run_bias(const BiasConfig& config);

}  // namespace blocklcs
