#include "blocklcs/bitlcs.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace blocklcs {

BitLcsKernel::BitLcsKernel(std::string_view reference)
    : m_(reference.size()), words_((reference.size() + 63) / 64 + 1) {
    // One spare word keeps the carry of the top bit inside the vector.
    for (auto& mask : masks_) mask.assign(words_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
        const int c = reference[i] == '1' ? 1 : 0;
        masks_[c][i / 64] |= Word{1} << (i % 64);
    }
}

std::vector<Word> BitLcsKernel::initial_state() const { return std::vector<Word>(words_, ~Word{0}); }

void BitLcsKernel::reset(std::span<Word> state) const { std::fill(state.begin(), state.end(), ~Word{0}); }

void BitLcsKernel::step(std::span<Word> state, char c) const noexcept {
    const Word* mask = masks_[c == '1' ? 1 : 0].data();
    Word* v = state.data();
    Word carry = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        const Word x = v[w];
        const Word matched = x & mask[w];
        const Word s = x + matched;
        const Word c1 = s < x;
        const Word s2 = s + carry;
        carry = c1 | (s2 < s);
        v[w] = s2 | (x & ~mask[w]);
    }
}

void BitLcsKernel::run(std::span<Word> state, std::string_view text) const noexcept {
    for (char c : text) step(state, c);
}

std::size_t BitLcsKernel::prefix_value(std::span<const Word> state, std::size_t t) const noexcept {
    std::size_t ones = 0;
    const std::size_t full = t / 64;
    for (std::size_t w = 0; w < full; ++w) ones += static_cast<std::size_t>(std::popcount(state[w]));
    if (const std::size_t rem = t % 64; rem)
        ones += static_cast<std::size_t>(std::popcount(state[full] & ((Word{1} << rem) - 1)));
    return t - ones;
}

namespace {

// For a byte of forward bits f and a byte of backward bits g (both in
// reference coordinates), the walk value changes by f_k - g_k at each of the
// eight positions. The table holds the total change and the minimum of the
// partial sums (including the empty prefix).
struct ByteStep {
    std::int8_t delta;
    std::int8_t min_prefix;
};

const std::array<ByteStep, 65536>& byte_table() {
    static const std::array<ByteStep, 65536> table = [] {
        std::array<ByteStep, 65536> t{};
        for (unsigned f = 0; f < 256; ++f) {
            for (unsigned g = 0; g < 256; ++g) {
                int cur = 0;
                int best = 0;
                for (int k = 0; k < 8; ++k) {
                    cur += static_cast<int>((f >> k) & 1U) - static_cast<int>((g >> k) & 1U);
                    best = std::min(best, cur);
                }
                t[(f << 8) | g] = {static_cast<std::int8_t>(cur), static_cast<std::int8_t>(best)};
            }
        }
        return t;
    }();
    return table;
}

inline Word reverse_bits(Word x) noexcept {
    x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
    x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
    return __builtin_bswap64(x);
}

}  // namespace

std::vector<Word> to_reference_orientation(std::span<const Word> backward, std::size_t m) {
    // backward bit u describes reference position m-1-u.
    const std::size_t words = backward.size();
    const std::size_t padded = words * 64;
    std::vector<Word> rev(words);
    for (std::size_t w = 0; w < words; ++w) rev[w] = reverse_bits(backward[words - 1 - w]);
    // rev bit p' = backward bit padded-1-p'; shift right by padded - m.
    const std::size_t shift = padded - m;
    const std::size_t ws = shift / 64;
    const std::size_t bs = shift % 64;
    std::vector<Word> out(words, 0);
    for (std::size_t w = 0; w + ws < words; ++w) {
        Word lo = rev[w + ws] >> bs;
        if (bs && w + ws + 1 < words) lo |= rev[w + ws + 1] << (64 - bs);
        out[w] = lo;
    }
    return out;
}

std::size_t combine_split_oriented(std::span<const Word> forward, std::span<const Word> backward_oriented,
                                   std::size_t m) noexcept {
    // f(t) = ones(F, [0,t)) + ones(G, [t,m)); answer is m - min_t f(t).
    std::size_t g_ones = 0;
    const std::size_t full_words = m / 64;
    for (std::size_t w = 0; w < full_words; ++w)
        g_ones += static_cast<std::size_t>(std::popcount(backward_oriented[w]));
    if (const std::size_t rem = m % 64; rem)
        g_ones += static_cast<std::size_t>(std::popcount(backward_oriented[full_words] & ((Word{1} << rem) - 1)));

    const auto& table = byte_table();
    long cur = static_cast<long>(g_ones);
    long best = cur;
    const std::size_t full_bytes = m / 8;
    for (std::size_t b = 0; b < full_bytes; ++b) {
        const unsigned f = static_cast<unsigned>(forward[b / 8] >> ((b % 8) * 8)) & 0xFFU;
        const unsigned g = static_cast<unsigned>(backward_oriented[b / 8] >> ((b % 8) * 8)) & 0xFFU;
        const ByteStep s = table[(f << 8) | g];
        best = std::min(best, cur + s.min_prefix);
        cur += s.delta;
    }
    for (std::size_t t = full_bytes * 8; t < m; ++t) {
        cur += static_cast<long>((forward[t / 64] >> (t % 64)) & 1U) -
               static_cast<long>((backward_oriented[t / 64] >> (t % 64)) & 1U);
        best = std::min(best, cur);
    }
    best = std::min(best, cur);
    return m - static_cast<std::size_t>(best);
}

std::size_t combine_split(std::span<const Word> forward, std::span<const Word> backward, std::size_t m) {
    const auto oriented = to_reference_orientation(backward, m);
    return combine_split_oriented(forward, oriented, m);
}

std::string reversed(std::string_view s) { return std::string(s.rbegin(), s.rend()); }

}  // namespace blocklcs
