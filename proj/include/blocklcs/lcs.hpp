#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace blocklcs {

/// A matched position pair, 1-based into x and y.
struct MatchPair {
    std::size_t i;
    std::size_t j;
    friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

/// A common subsequence as an explicit set of matched pairs, strictly
/// increasing in both coordinates, every pair matching equal symbols.
struct Alignment {
    std::vector<MatchPair> pairs;

    std::size_t score() const noexcept { return pairs.size(); }
    bool empty() const noexcept { return pairs.empty(); }
    friend bool operator==(const Alignment&, const Alignment&) = default;
};

/// Throws InvalidAlignment unless `a` is a valid alignment of x and y.
void validate_alignment(const Alignment& a, std::string_view x, std::string_view y);

/// Coordinatewise order on alignments of equal size: a <= b iff every k-th
/// pair of a is <= the k-th pair of b in both coordinates.
bool alignment_leq(const Alignment& a, const Alignment& b);

/// Quadratic dynamic program; defines the semantics of every other LCS path.
std::size_t lcs_length(std::string_view x, std::string_view y);

/// Bit-parallel LCS over {0,1}; same contract as lcs_length.
std::size_t lcs_length_fast(std::string_view x, std::string_view y);

/// Largest string length accepted by lcs_oracle.
inline constexpr std::size_t kOracleGuard = 20;

/// Exhaustive memoized recursion, for tests only. Throws GuardExceeded when
/// either input is longer than kOracleGuard.
std::size_t lcs_oracle(std::string_view x, std::string_view y);

/// Optimal alignment that is minimal for alignment_leq: pairs are chosen
/// greedily, each time the smallest i and then the smallest j that still
/// completes to an optimal alignment. Uses a full suffix table for small
/// inputs and checkpointed bit-parallel suffix rows above that.
Alignment leftmost_optimal_alignment(std::string_view x, std::string_view y);

namespace detail {
/// Table-based route (quadratic memory).
Alignment leftmost_alignment_table(std::string_view x, std::string_view y);
/// Checkpointed route (O(n sqrt n) bits of memory).
Alignment leftmost_alignment_checkpointed(std::string_view x, std::string_view y);
/// Inputs with (|x|+1)(|y|+1) at most this use the table route.
inline constexpr std::size_t kTableCellLimit = std::size_t{1} << 22;
}  // namespace detail

/// Largest string length accepted by enumerate_optimal_alignments.
inline constexpr std::size_t kDefaultEnumerationGuard = 40;

struct AlignmentEnumeration {
    std::vector<Alignment> alignments;
    bool complete = true;  ///< false when max_count stopped the enumeration
};

/// Every optimal alignment of x and y (up to max_count), in lexicographic
/// order of their pair lists. Throws GuardExceeded when either input is
/// longer than `guard`.
AlignmentEnumeration enumerate_optimal_alignments(std::string_view x, std::string_view y,
                                                  std::size_t max_count = 100000,
                                                  std::size_t guard = kDefaultEnumerationGuard);

/// One `i,j` pair per line, ascending.
std::string to_text(const Alignment& a);
Alignment alignment_from_text(std::string_view text);

}  // namespace blocklcs
