#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

inline bool is_subsequence(const std::string& s, const std::string& t) {
    std::size_t j = 0;
    for (char c : t)
        if (j < s.size() && s[j] == c) ++j;
    return j == s.size();
}

/// LCS by trying every subsequence of the shorter string, longest first.
inline std::size_t lcs_by_subsets(const std::string& a, const std::string& b) {
    const std::string& s = a.size() <= b.size() ? a : b;
    const std::string& t = a.size() <= b.size() ? b : a;
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
        const auto bits = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (bits <= best) continue;
        std::string sub;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask >> i & 1U) sub += s[i];
        if (is_subsequence(sub, t)) best = bits;
    }
    return best;
}

/// Rolling-row DP written independently of the library.
inline std::size_t lcs_rows(const std::string& x, const std::string& y) {
    std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
    for (char c : x) {
        for (std::size_t j = 1; j <= y.size(); ++j)
            cur[j] = c == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[y.size()];
}

/// LCS(x, y[0..t)) for every t.
inline std::vector<std::size_t> lcs_prefix_row(const std::string& x, const std::string& y) {
    std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
    for (char c : x) {
        for (std::size_t j = 1; j <= y.size(); ++j)
            cur[j] = c == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev;
}

/// Every common subsequence of maximal length as 1-based pair lists.
inline std::vector<Pairs> optimal_alignments_brute(const std::string& x, const std::string& y) {
    std::vector<Pairs> all;
    Pairs cur;
    std::size_t best = 0;
    auto rec = [&](auto&& self, std::size_t i0, std::size_t j0) -> void {
        if (cur.size() > best) {
            best = cur.size();
            all.clear();
        }
        if (cur.size() == best) all.push_back(cur);
        for (std::size_t i = i0; i < x.size(); ++i)
            for (std::size_t j = j0; j < y.size(); ++j)
                if (x[i] == y[j]) {
                    cur.emplace_back(i + 1, j + 1);
                    self(self, i + 1, j + 1);
                    cur.pop_back();
                }
    };
    rec(rec, 0, 0);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

inline bool leq(const Pairs& a, const Pairs& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].first > b[k].first || a[k].second > b[k].second) return false;
    return true;
}

/// 0-based block index of every position.
inline std::vector<std::size_t> block_ids(const std::string& s) {
    std::vector<std::size_t> ids(s.size());
    std::size_t b = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && s[i] != s[i - 1]) ++b;
        ids[i] = b;
    }
    return ids;
}

inline std::vector<int> run_lengths(const std::string& s) {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == 0 || s[i] != s[i - 1]) out.push_back(0);
        ++out.back();
    }
    return out;
}

enum class Kind { OneToOne, Polygamist, SharedTarget, LeftOut };

struct Classes {
    std::vector<std::set<std::size_t>> x_partners;
    std::vector<std::set<std::size_t>> y_partners;
    std::vector<Kind> x_kind;
    std::vector<Kind> y_kind;
};

inline Classes classify(const std::string& x, const std::string& y, const Pairs& pairs) {
    const auto bx = block_ids(x), by = block_ids(y);
    Classes c;
    c.x_partners.resize(x.empty() ? 0 : bx.back() + 1);
    c.y_partners.resize(y.empty() ? 0 : by.back() + 1);
    for (auto [i, j] : pairs) {
        c.x_partners[bx[i - 1]].insert(by[j - 1]);
        c.y_partners[by[j - 1]].insert(bx[i - 1]);
    }
    auto kinds = [](const auto& mine, const auto& theirs) {
        std::vector<Kind> k;
        for (const auto& ps : mine) {
            if (ps.empty()) k.push_back(Kind::LeftOut);
            else if (ps.size() >= 2) k.push_back(Kind::Polygamist);
            else if (theirs[*ps.begin()].size() == 1) k.push_back(Kind::OneToOne);
            else k.push_back(Kind::SharedTarget);
        }
        return k;
    };
    c.x_kind = kinds(c.x_partners, c.y_partners);
    c.y_kind = kinds(c.y_partners, c.x_partners);
    return c;
}

/// Bias bound written directly from its defining expression; p indexed by
/// length offset (0 = l-1, 1 = l, 2 = l+1).
inline double bias_bound(double q, const std::array<std::array<double, 3>, 3>& p) {
    const double short_row = p[0][0] + p[0][1] + p[0][2];
    const double long_row = p[2][0] + p[2][1] + p[2][2];
    return (p[0][1] + p[0][2]) / short_row * (1.0 - 9.0 * q) - p[2][2] / long_row * (1.0 - 3.0 * q) - 3.0 * q;
}

inline double entropy_nats(const std::vector<double>& probs) {
    double h = 0.0;
    for (double v : probs)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

}  // namespace oracle
