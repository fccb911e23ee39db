#pragma once

// Bit-parallel LCS over the binary alphabet.
//
// A state is a bit vector indexed by positions of a fixed reference string r
// (|r| = m). Bit t is 0 exactly when DP[k][t+1] - DP[k][t] = 1, where DP[k][.]
// is the LCS row of the k characters processed so far against prefixes of r.
// Hence LCS(processed, r[0..t)) is the number of zeros among bits [0, t).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace blocklcs {

using Word = std::uint64_t;

class BitLcsKernel {
public:
    explicit BitLcsKernel(std::string_view reference);

    std::size_t reference_length() const noexcept { return m_; }
    std::size_t words() const noexcept { return words_; }

    /// State before any character is processed (all ones).
    std::vector<Word> initial_state() const;
    void reset(std::span<Word> state) const;

    /// Processes one character ('0' or '1').
    void step(std::span<Word> state, char c) const noexcept;
    void run(std::span<Word> state, std::string_view text) const noexcept;

    /// LCS(processed, r[0..t)), 0 <= t <= m.
    std::size_t prefix_value(std::span<const Word> state, std::size_t t) const noexcept;
    std::size_t value(std::span<const Word> state) const noexcept { return prefix_value(state, m_); }

private:
    std::size_t m_;
    std::size_t words_;
    std::array<std::vector<Word>, 2> masks_;
};

/// max_t [ LCS(A, r[0..t)) + LCS(B, r[t..m)) ] given the forward state of A
/// over r and the forward state of reverse(B) over reverse(r). This equals
/// LCS(A concatenated with B, r). Both states must come from kernels over r
/// and reverse(r) respectively (same m).
std::size_t combine_split(std::span<const Word> forward, std::span<const Word> backward, std::size_t m);

/// Re-indexes a backward state (built over reverse(r)) by positions of r, so
/// that it can be combined repeatedly without re-orienting it each time.
std::vector<Word> to_reference_orientation(std::span<const Word> backward, std::size_t m);

/// combine_split with the backward state already in reference orientation.
std::size_t combine_split_oriented(std::span<const Word> forward, std::span<const Word> backward_oriented,
                                   std::size_t m) noexcept;

/// Reverses a string.
std::string reversed(std::string_view s);

}  // namespace blocklcs
