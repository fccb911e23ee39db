#pragma once

// Random block modification: one uniformly chosen (l-1)-block of X grows to
// length l and one uniformly chosen (l+1)-block shrinks to l. The truncated
// tail block is never eligible. On the bit string this inserts one symbol at
// the end of the grown block and deletes the last bit of the shrunk block,
// so the length n is preserved.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blocklcs/block_alignment.hpp"
#include "blocklcs/blockmodel.hpp"
#include "blocklcs/lcs.hpp"

namespace blocklcs {

/// Exact fraction with positive denominator, kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t num, std::int64_t den);
    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct ModificationOutcome {
    std::size_t grow_index;
    std::size_t shrink_index;
    int delta_L;
};

/// Throws InvalidModification unless block grow_index has length l-1, block
/// shrink_index has length l+1 and neither is the truncated tail.
BlockSequence apply_modification(const BlockSequence& x, int l, std::size_t grow_index, std::size_t shrink_index);

/// Eligible (l-1)-blocks and (l+1)-blocks of x, ascending.
struct Eligible {
    std::vector<std::size_t> grow;
    std::vector<std::size_t> shrink;
    std::size_t pairs() const noexcept { return grow.size() * shrink.size(); }
};

Eligible eligible_blocks(const BlockSequence& x, int l);

enum class EnumerationMethod {
    Sweep,  ///< shared bit-parallel prefix sweeps combined with suffix states
    Naive   ///< materialize every modified string and recompute its LCS
};

/// delta_L of every eligible (grow, shrink) pair, grow-major. Throws
/// UndefinedConditional when either eligible set is empty.
std::vector<ModificationOutcome> enumerate_modifications(const BlockSequence& x, const BlockSequence& y, int l,
                                                         EnumerationMethod method = EnumerationMethod::Sweep,
                                                         unsigned jobs = 1);

/// Mean of delta_L over all eligible pairs with equal weights.
Rational exact_conditional_expectation(const BlockSequence& x, const BlockSequence& y, int l,
                                       EnumerationMethod method = EnumerationMethod::Sweep, unsigned jobs = 1);

struct ConditionalEstimate {
    double value = 0.0;
    double standard_error = 0.0;  ///< 0 when exact; NaN for a single sample
    bool exact = false;
    std::optional<Rational> exact_value;
    std::size_t eligible_pairs = 0;
    std::size_t samples = 0;
    std::size_t base_lcs = 0;
};

/// Mean and standard error of delta_L over k pairs drawn uniformly with
/// replacement. Deterministic in seed.
ConditionalEstimate sampled_conditional_expectation(const BlockSequence& x, const BlockSequence& y, int l,
                                                    std::size_t k, std::uint64_t seed);

struct ConditionalOptions {
    std::size_t pair_budget = 1'000'000;  ///< enumerate exactly up to this many pairs
    std::size_t samples = 2000;           ///< draws above the budget
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// Exact enumeration within the budget, sampling above it.
ConditionalEstimate conditional_expectation(const BlockSequence& x, const BlockSequence& y, int l,
                                            const ConditionalOptions& options = {});

/// Expected change under a fixed alignment: a grown block gains one when it is
/// one-to-one with a longer block; a shrunk block loses one when all its bits
/// are matched.
Rational fixed_alignment_expectation(const BlockSequence& x, const BlockSequence& y, const Alignment& a, int l);

struct LowerBound {
    double value;
    double q;
    bool q_approximated;  ///< q was not supplied and max(q1, q2) was used
};

/// The bias bound R_short (1 - 9q) - R_long (1 - 3q) - 3q evaluated on the
/// decomposition's p. UndefinedValue when p is undefined or a row sums to 0.
LowerBound alignment_lower_bound(const BlockDecomposition& d, std::optional<double> q = std::nullopt);

/// Per-replicate record of the bias experiment.
struct BiasRecord {
    std::size_t replicate = 0;
    std::uint64_t seed = 0;  ///< master seed; X, Y come from replicate_seeds(seed, replicate)
    std::size_t n = 0;
    int l = 0;
    std::size_t lcs = 0;
    double expectation = 0.0;
    double standard_error = 0.0;
    std::size_t eligible_pairs = 0;
    std::string status;  ///< exact | sampled | undefined-conditional
};

std::string bias_csv_header();
std::string to_csv_row(const BiasRecord& r);

}  // namespace blocklcs
