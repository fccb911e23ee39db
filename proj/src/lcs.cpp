#include "blocklcs/lcs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>

#include "blocklcs/bitlcs.hpp"
#include "blocklcs/errors.hpp"

namespace blocklcs {

void validate_alignment(const Alignment& a, std::string_view x, std::string_view y) {
    std::size_t prev_i = 0, prev_j = 0;
    for (const auto& [i, j] : a.pairs) {
        if (i < 1 || j < 1 || i > x.size() || j > y.size())
            throw InvalidAlignment("alignment pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") out of range");
        if (i <= prev_i || j <= prev_j) throw InvalidAlignment("alignment pairs are not strictly increasing");
        if (x[i - 1] != y[j - 1])
            throw InvalidAlignment("alignment pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") matches different symbols");
        prev_i = i;
        prev_j = j;
    }
}

bool alignment_leq(const Alignment& a, const Alignment& b) {
    if (a.pairs.size() != b.pairs.size()) return false;
    for (std::size_t k = 0; k < a.pairs.size(); ++k)
        if (a.pairs[k].i > b.pairs[k].i || a.pairs[k].j > b.pairs[k].j) return false;
    return true;
}

std::size_t lcs_length(std::string_view x, std::string_view y) {
    if (x.size() < y.size()) std::swap(x, y);
    std::vector<std::uint32_t> row(y.size() + 1, 0);
    for (char c : x) {
        std::uint32_t diag = 0;
        for (std::size_t j = 1; j <= y.size(); ++j) {
            const std::uint32_t up = row[j];
            row[j] = (c == y[j - 1]) ? diag + 1 : std::max(up, row[j - 1]);
            diag = up;
        }
    }
    return row[y.size()];
}

std::size_t lcs_length_fast(std::string_view x, std::string_view y) {
    if (x.empty() || y.empty()) return 0;
    // Bits index the longer string; fewer steps over wider words.
    if (x.size() > y.size()) std::swap(x, y);
    const BitLcsKernel kernel(y);
    auto state = kernel.initial_state();
    kernel.run(state, x);
    return kernel.value(state);
}

std::size_t lcs_oracle(std::string_view x, std::string_view y) {
    if (x.size() > kOracleGuard || y.size() > kOracleGuard)
        throw GuardExceeded("lcs_oracle accepts strings of length <= " + std::to_string(kOracleGuard));
    constexpr int kUnknown = -1;
    std::array<std::array<int, kOracleGuard + 1>, kOracleGuard + 1> memo;
    for (auto& r : memo) r.fill(kUnknown);
    std::function<int(std::size_t, std::size_t)> best = [&](std::size_t i, std::size_t j) -> int {
        if (i == x.size() || j == y.size()) return 0;
        int& slot = memo[i][j];
        if (slot != kUnknown) return slot;
        int v = std::max(best(i + 1, j), best(i, j + 1));
        if (x[i] == y[j]) v = std::max(v, 1 + best(i + 1, j + 1));
        return slot = v;
    };
    return static_cast<std::size_t>(best(0, 0));
}

namespace {

// next[c][j]: first position >= j of symbol c in y, or |y|.
std::array<std::vector<std::size_t>, 2> next_occurrence(std::string_view y) {
    std::array<std::vector<std::size_t>, 2> next;
    for (auto& v : next) v.assign(y.size() + 1, y.size());
    for (std::size_t j = y.size(); j-- > 0;) {
        next[0][j] = next[0][j + 1];
        next[1][j] = next[1][j + 1];
        next[y[j] == '1' ? 1 : 0][j] = j;
    }
    return next;
}

// Full table of suffix LCS values S(i, j) = LCS(x[i..], y[j..]).
class SuffixTable {
public:
    SuffixTable(std::string_view x, std::string_view y)
        : cols_(y.size() + 1), cells_((x.size() + 1) * (y.size() + 1), 0) {
        for (std::size_t i = x.size(); i-- > 0;) {
            for (std::size_t j = y.size(); j-- > 0;) {
                at(i, j) = (x[i] == y[j]) ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));
            }
        }
    }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

private:
    std::uint32_t& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
    std::size_t cols_;
    std::vector<std::uint32_t> cells_;
};

// Greedy lexicographic construction shared by both routes. `suffix(i, j)`
// returns LCS(x[i..], y[j..]) and is queried with nondecreasing i.
template <typename SuffixFn>
Alignment greedy_leftmost(std::string_view x, std::string_view y, std::size_t total, SuffixFn&& suffix) {
    const auto next = next_occurrence(y);
    Alignment out;
    out.pairs.reserve(total);
    std::size_t i = 0, j0 = 0, remaining = total;
    while (remaining > 0) {
        const std::size_t j = next[x[i] == '1' ? 1 : 0][j0];
        if (j < y.size() && 1 + suffix(i + 1, j + 1) == remaining) {
            out.pairs.push_back({i + 1, j + 1});
            j0 = j + 1;
            --remaining;
        }
        ++i;
    }
    return out;
}

}  // namespace

namespace detail {

Alignment leftmost_alignment_table(std::string_view x, std::string_view y) {
    const SuffixTable table(x, y);
    return greedy_leftmost(x, y, table(0, 0), [&](std::size_t i, std::size_t j) -> std::size_t {
        return table(i, j);
    });
}

Alignment leftmost_alignment_checkpointed(std::string_view x, std::string_view y) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (n == 0 || m == 0) return {};
    // row(i) is the state over reverse(y) after processing x[n-1], ..., x[i];
    // LCS(x[i..], y[j..]) = prefix_value(row(i), m - j).
    const BitLcsKernel kernel(reversed(y));
    const std::size_t words = kernel.words();
    const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
    const std::size_t segments = n / stride + 1;

    std::vector<Word> checkpoints(segments * words);
    std::vector<Word> state = kernel.initial_state();
    for (std::size_t i = n;; --i) {
        if (i % stride == 0)
            std::copy(state.begin(), state.end(), checkpoints.begin() + static_cast<std::ptrdiff_t>((i / stride) * words));
        if (i == 0) break;
        kernel.step(state, x[i - 1]);
    }
    const std::size_t total = kernel.value(std::span<const Word>(checkpoints.data(), words));

    std::vector<Word> segment((stride + 1) * words);
    std::size_t loaded = SIZE_MAX;
    auto load_segment = [&](std::size_t seg) {
        const std::size_t lo = seg * stride;
        const std::size_t hi = std::min(lo + stride, n);
        std::vector<Word> s = (hi == n) ? kernel.initial_state()
                                        : std::vector<Word>(checkpoints.begin() + static_cast<std::ptrdiff_t>((hi / stride) * words),
                                                            checkpoints.begin() + static_cast<std::ptrdiff_t>((hi / stride + 1) * words));
        for (std::size_t i = hi;; --i) {
            std::copy(s.begin(), s.end(), segment.begin() + static_cast<std::ptrdiff_t>((i - lo) * words));
            if (i == lo) break;
            kernel.step(s, x[i - 1]);
        }
        loaded = seg;
    };
    return greedy_leftmost(x, y, total, [&](std::size_t i, std::size_t j) -> std::size_t {
        const std::size_t seg = std::min(i / stride, (n - 1) / stride);
        if (seg != loaded) load_segment(seg);
        const std::span<const Word> row(segment.data() + (i - seg * stride) * words, words);
        return kernel.prefix_value(row, m - j);
    });
}

}  // namespace detail

Alignment leftmost_optimal_alignment(std::string_view x, std::string_view y) {
    if (x.empty() || y.empty()) return {};
    if ((x.size() + 1) * (y.size() + 1) <= detail::kTableCellLimit) return detail::leftmost_alignment_table(x, y);
    return detail::leftmost_alignment_checkpointed(x, y);
}

AlignmentEnumeration enumerate_optimal_alignments(std::string_view x, std::string_view y, std::size_t max_count,
                                                  std::size_t guard) {
    if (x.size() > guard || y.size() > guard)
        throw GuardExceeded("alignment enumeration accepts strings of length <= " + std::to_string(guard));
    AlignmentEnumeration out;
    const SuffixTable table(x, y);
    Alignment current;
    std::function<void(std::size_t, std::size_t, std::size_t)> extend = [&](std::size_t i0, std::size_t j0,
                                                                             std::size_t remaining) {
        if (!out.complete) return;
        if (remaining == 0) {
            if (out.alignments.size() == max_count) {
                out.complete = false;
                return;
            }
            out.alignments.push_back(current);
            return;
        }
        for (std::size_t i = i0; i < x.size(); ++i) {
            for (std::size_t j = j0; j < y.size(); ++j) {
                if (x[i] != y[j] || 1 + table(i + 1, j + 1) != remaining) continue;
                current.pairs.push_back({i + 1, j + 1});
                extend(i + 1, j + 1, remaining - 1);
                current.pairs.pop_back();
                if (!out.complete) return;
            }
        }
    };
    extend(0, 0, table(0, 0));
    return out;
}

std::string to_text(const Alignment& a) {
    std::string out;
    for (const auto& [i, j] : a.pairs) {
        out += std::to_string(i);
        out += ',';
        out += std::to_string(j);
        out += '\n';
    }
    return out;
}

Alignment alignment_from_text(std::string_view text) {
    Alignment a;
    while (!text.empty()) {
        auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) throw InvalidAlignment("alignment line must be 'i,j'");
        MatchPair p{};
        auto r1 = std::from_chars(line.data(), line.data() + comma, p.i);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), p.j);
        if (r1.ec != std::errc() || r1.ptr != line.data() + comma || r2.ec != std::errc() ||
            r2.ptr != line.data() + line.size())
            throw InvalidAlignment("malformed alignment line '" + std::string(line) + "'");
        a.pairs.push_back(p);
    }
    return a;
}

}  // namespace blocklcs
