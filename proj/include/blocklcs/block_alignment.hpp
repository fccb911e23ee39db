#pragma once

// Block-level structure of a bit-level alignment.
//
// Block i of X is connected to block j of Y when at least one matched pair
// lands in both. Every classification derives from this bipartite graph:
//   LeftOut       no connection
//   Polygamist    connected to two or more blocks of the other sequence
//   OneToOne      single partner whose only partner is this block
//   SharedTarget  single partner that is itself polygamist
//   TruncatedTail the final block cut at n (excluded from statistics)

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blocklcs/blockmodel.hpp"
#include "blocklcs/lcs.hpp"
#include "blocklcs/pair_matrix.hpp"

namespace blocklcs {

enum class BlockKind { OneToOne, Polygamist, SharedTarget, LeftOut, TruncatedTail };

const char* to_string(BlockKind kind) noexcept;

struct BlockClass {
    BlockKind kind = BlockKind::LeftOut;
    /// Connected blocks of the other sequence, ascending.
    std::vector<std::size_t> partners;
};

enum class Side { X, Y };

struct BlockDecomposition {
    int l = 0;
    TailPolicy tail_policy = TailPolicy::Exclude;
    std::vector<BlockClass> x_classes;
    std::vector<BlockClass> y_classes;
    /// One-to-one pairs counted in p (pairs touching a truncated tail are not).
    PairCounts pair_counts{};
    std::size_t one_to_one_pairs = 0;
    /// Empirical p_ij; empty when no one-to-one pair exists.
    std::optional<PairMatrix> p;
    std::size_t x_blocks = 0;  ///< denominator for q1, delta1
    std::size_t y_blocks = 0;
    std::size_t x_left_out = 0;
    std::size_t y_left_out = 0;
    std::size_t x_tail_left_out = 0;  ///< left-out run touching the end of X
    std::size_t y_tail_left_out = 0;
    double q1 = 0.0;
    double q2 = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;

    const std::vector<BlockClass>& classes(Side side) const noexcept {
        return side == Side::X ? x_classes : y_classes;
    }
};

/// Classifies every block and computes p, q1, q2, delta1, delta2. Throws
/// InvalidAlignment when `a` is not an alignment of the materialized strings
/// and InvalidParameter when a one-to-one pair has a length outside
/// {l-1, l, l+1}.
BlockDecomposition decompose(const BlockSequence& x, const BlockSequence& y, const Alignment& a, int l,
                             TailPolicy policy = TailPolicy::Exclude);

/// Alignment that leaves out no block: the k-th block of x is matched with the
/// k-th block of y on their first min(len) bits, for k up to the smaller
/// block count.
Alignment block_by_block_alignment(const BlockSequence& x, const BlockSequence& y);

struct BlockRef {
    Side side;
    std::size_t block;  ///< 0-based
    friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

struct StructureCheck {
    bool ok = true;
    std::vector<BlockRef> witness;
};

/// Fails when two consecutive left-out blocks lie strictly between connected
/// blocks of the same sequence. Leading and trailing left-out runs are exempt.
StructureCheck check_no_adjacent_leftout(const BlockDecomposition& d);

/// Fails when several blocks of X are aligned with several blocks of Y. Blocks
/// b and b+2 of one sequence are merged when block b+1 is left out and both
/// are connected; a violation is a component of connections plus merges that
/// holds at least two blocks of each sequence. The witness lists its blocks.
StructureCheck check_no_many_to_many(const BlockDecomposition& d);

struct GapBound {
    double lhs;  ///< |q1 - q2|
    double rhs;  ///< 1.5 |delta1 - delta2| + 4 l Delta / n
    bool holds() const noexcept { return lhs <= rhs; }
};

/// Both sides of |q1 - q2| <= 1.5 |delta1 - delta2| + 4 l Delta / n. Throws
/// PreconditionViolation when the decomposition has interior adjacent
/// left-out blocks or a block count differs from n/l by more than Delta.
GapBound q_gap_bound(const BlockDecomposition& d, std::size_t n, int l, double delta_blocks);

/// Flat `key=value` lines: p entries, q1, q2, delta1, delta2, class histogram.
std::string to_report(const BlockDecomposition& d);

}  // namespace blocklcs
