#pragma once

// Block model for binary sequences: runs of identical symbols whose lengths
// are i.i.d. uniform on {l-1, l, l+1}, observed through the first n bits.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blocklcs {

/// How a final block cut short by the truncation at n is counted.
/// Exclude is the default everywhere: the partial block is flagged and left
/// out of all block-statistics denominators.
enum class TailPolicy { Exclude, Include };

/// Generative representation of a sequence: first symbol, run lengths and the
/// truncation length. Every stored block has at least one bit inside the
/// first n bits; the last block may extend beyond n.
class BlockSequence {
public:
    /// Throws InvalidParameter when a length is < 1, the lengths do not cover
    /// n bits, a block starts at or after bit n, or first_symbol is not 0/1.
    BlockSequence(int first_symbol, std::vector<int> block_lengths, std::size_t n);

    /// Parses the run structure of a '0'/'1' string; n = s.size().
    static BlockSequence from_bits(std::string_view bits);

    int first_symbol() const noexcept { return first_symbol_; }
    const std::vector<int>& block_lengths() const noexcept { return lengths_; }
    std::size_t n() const noexcept { return n_; }

    std::size_t stored_blocks() const noexcept { return lengths_.size(); }
    /// Symbol carried by block i (blocks alternate).
    int block_symbol(std::size_t i) const noexcept { return first_symbol_ ^ static_cast<int>(i & 1U); }
    /// 0-based bit offset where block i starts.
    std::size_t block_start(std::size_t i) const noexcept { return starts_[i]; }
    /// Number of bits of block i inside the first n bits.
    std::size_t visible_length(std::size_t i) const noexcept;

    /// True when the last block is cut by the truncation at n.
    bool tail_truncated() const noexcept;
    bool is_truncated_block(std::size_t i) const noexcept {
        return tail_truncated() && i + 1 == lengths_.size();
    }
    /// Blocks counted in statistics under the given policy.
    std::size_t block_count(TailPolicy policy = TailPolicy::Exclude) const noexcept;

    /// Block index of every bit position (size n).
    std::vector<std::size_t> block_of_position() const;

    friend bool operator==(const BlockSequence&, const BlockSequence&) = default;

private:
    int first_symbol_;
    std::vector<int> lengths_;
    std::size_t n_;
    std::vector<std::size_t> starts_;
};

/// Draws a model sequence: first symbol uniform on {0,1}, then i.i.d. block
/// lengths uniform on {l-1,l,l+1} until they cover n bits. Deterministic in
/// seed. Throws InvalidParameter when l < 2 or n < 1.
BlockSequence sample_block_sequence(int l, std::size_t n, std::uint64_t seed);

/// The first `count` block lengths of the infinite sequence that
/// sample_block_sequence(l, n, seed) truncates; the two agree on every
/// common block.
std::vector<int> sample_block_lengths(int l, std::size_t count, std::uint64_t seed);

/// First n bits as a string of '0'/'1'.
std::string materialize(const BlockSequence& bs);

/// Cumulative block lengths S_k and the counting function N_t = max{k : S_k <= t}.
class RenewalStats {
public:
    explicit RenewalStats(const BlockSequence& bs);

    /// S_1, ..., S_K over all stored blocks (strictly increasing).
    const std::vector<std::size_t>& partial_sums() const noexcept { return sums_; }
    /// N_t for 0 <= t <= n; 0 when t is below the first block length.
    /// Throws InvalidParameter when t > n.
    std::size_t block_count_at(std::size_t t) const;

private:
    std::vector<std::size_t> sums_;
    std::size_t n_;
};

RenewalStats renewal_stats(const BlockSequence& bs);

struct Interval {
    double lo;
    double hi;
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// I_n = [n/l - n^0.6, n/l + n^0.6].
Interval block_count_interval(std::size_t n, int l);

/// Line form `first_symbol;len,len,...;n`.
std::string to_text(const BlockSequence& bs);
BlockSequence block_sequence_from_text(std::string_view line);

}  // namespace blocklcs
