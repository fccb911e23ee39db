#include "blocklcs/block_alignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "blocklcs/errors.hpp"

namespace blocklcs {

const char* to_string(BlockKind kind) noexcept {
    switch (kind) {
        case BlockKind::OneToOne: return "one_to_one";
        case BlockKind::Polygamist: return "polygamist";
        case BlockKind::SharedTarget: return "shared_target";
        case BlockKind::LeftOut: return "left_out";
        case BlockKind::TruncatedTail: return "truncated_tail";
    }
    return "unknown";
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

void sort_unique(Adjacency& adj) {
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

std::vector<BlockClass> classify(const BlockSequence& own, const Adjacency& own_adj, const Adjacency& other_adj,
                                 TailPolicy policy) {
    std::vector<BlockClass> out(own_adj.size());
    for (std::size_t b = 0; b < own_adj.size(); ++b) {
        BlockClass& c = out[b];
        c.partners = own_adj[b];
        if (policy == TailPolicy::Exclude && own.is_truncated_block(b)) {
            c.kind = BlockKind::TruncatedTail;
        } else if (c.partners.empty()) {
            c.kind = BlockKind::LeftOut;
        } else if (c.partners.size() >= 2) {
            c.kind = BlockKind::Polygamist;
        } else if (other_adj[c.partners.front()].size() == 1) {
            c.kind = BlockKind::OneToOne;
        } else {
            c.kind = BlockKind::SharedTarget;
        }
    }
    return out;
}

std::size_t count_kind(const std::vector<BlockClass>& classes, BlockKind kind) {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [&](const BlockClass& c) { return c.kind == kind; }));
}

// Length of the left-out run touching the end. An unmatched truncated tail is
// skipped; a matched one ends the run immediately.
std::size_t tail_left_out(const std::vector<BlockClass>& classes) {
    std::size_t b = classes.size();
    if (b > 0 && classes[b - 1].kind == BlockKind::TruncatedTail) {
        if (!classes[b - 1].partners.empty()) return 0;
        --b;
    }
    std::size_t run = 0;
    while (b > 0 && classes[b - 1].kind == BlockKind::LeftOut) {
        ++run;
        --b;
    }
    return run;
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t length_index(int length, int l) {
    const int k = length - (l - 1);
    if (k < 0 || k > 2)
        throw InvalidParameter("one-to-one block of length " + std::to_string(length) + " lies outside {l-1, l, l+1} for l=" +
                               std::to_string(l));
    return static_cast<std::size_t>(k);
}

}  // namespace

BlockDecomposition decompose(const BlockSequence& x, const BlockSequence& y, const Alignment& a, int l,
                             TailPolicy policy) {
    if (l < 2) throw InvalidParameter("l must be >= 2");
    validate_alignment(a, materialize(x), materialize(y));

    const auto xb = x.block_of_position();
    const auto yb = y.block_of_position();
    Adjacency x_adj(x.stored_blocks()), y_adj(y.stored_blocks());
    for (const auto& [i, j] : a.pairs) {
        x_adj[xb[i - 1]].push_back(yb[j - 1]);
        y_adj[yb[j - 1]].push_back(xb[i - 1]);
    }
    sort_unique(x_adj);
    sort_unique(y_adj);

    BlockDecomposition d;
    d.l = l;
    d.tail_policy = policy;
    d.x_classes = classify(x, x_adj, y_adj, policy);
    d.y_classes = classify(y, y_adj, x_adj, policy);

    for (std::size_t b = 0; b < d.x_classes.size(); ++b) {
        const BlockClass& c = d.x_classes[b];
        if (c.kind != BlockKind::OneToOne) continue;
        const std::size_t partner = c.partners.front();
        if (d.y_classes[partner].kind != BlockKind::OneToOne) continue;
        const std::size_t ix = length_index(x.block_lengths()[b], l);
        const std::size_t iy = length_index(y.block_lengths()[partner], l);
        ++d.pair_counts[ix][iy];
        ++d.one_to_one_pairs;
    }
    if (d.one_to_one_pairs > 0) {
        PairMatrix p{};
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) p[r][c] = ratio(d.pair_counts[r][c], d.one_to_one_pairs);
        d.p = p;
    }

    d.x_blocks = x.block_count(policy);
    d.y_blocks = y.block_count(policy);
    d.x_left_out = count_kind(d.x_classes, BlockKind::LeftOut);
    d.y_left_out = count_kind(d.y_classes, BlockKind::LeftOut);
    d.x_tail_left_out = tail_left_out(d.x_classes);
    d.y_tail_left_out = tail_left_out(d.y_classes);
    d.q1 = ratio(d.x_left_out, d.x_blocks);
    d.q2 = ratio(d.y_left_out, d.y_blocks);
    d.delta1 = ratio(d.x_tail_left_out, d.x_blocks);
    d.delta2 = ratio(d.y_tail_left_out, d.y_blocks);
    return d;
}

Alignment block_by_block_alignment(const BlockSequence& x, const BlockSequence& y) {
    if (x.first_symbol() != y.first_symbol())
        throw InvalidParameter("block-by-block alignment needs sequences with the same first symbol");
    Alignment a;
    const std::size_t blocks = std::min(x.stored_blocks(), y.stored_blocks());
    for (std::size_t k = 0; k < blocks; ++k) {
        const std::size_t len = std::min(x.visible_length(k), y.visible_length(k));
        for (std::size_t t = 0; t < len; ++t) a.pairs.push_back({x.block_start(k) + t + 1, y.block_start(k) + t + 1});
    }
    return a;
}

namespace {

void adjacent_leftout_on(const std::vector<BlockClass>& classes, Side side, StructureCheck& out) {
    std::size_t first = classes.size(), last = 0;
    for (std::size_t b = 0; b < classes.size(); ++b) {
        if (classes[b].partners.empty()) continue;
        first = std::min(first, b);
        last = b;
    }
    if (first >= last) return;
    for (std::size_t b = first + 1; b + 1 < last; ++b) {
        if (classes[b].kind == BlockKind::LeftOut && classes[b + 1].kind == BlockKind::LeftOut) {
            out.ok = false;
            if (out.witness.empty() || !(out.witness.back() == BlockRef{side, b})) out.witness.push_back({side, b});
            out.witness.push_back({side, b + 1});
        }
    }
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
        return v;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

void merge_across_left_out(const std::vector<BlockClass>& classes, std::size_t offset, DisjointSets& sets) {
    for (std::size_t b = 0; b + 2 < classes.size(); ++b) {
        if (classes[b + 1].kind == BlockKind::LeftOut && !classes[b].partners.empty() &&
            !classes[b + 2].partners.empty())
            sets.unite(offset + b, offset + b + 2);
    }
}

}  // namespace

StructureCheck check_no_adjacent_leftout(const BlockDecomposition& d) {
    StructureCheck out;
    adjacent_leftout_on(d.x_classes, Side::X, out);
    adjacent_leftout_on(d.y_classes, Side::Y, out);
    return out;
}

StructureCheck check_no_many_to_many(const BlockDecomposition& d) {
    const std::size_t nx = d.x_classes.size();
    const std::size_t ny = d.y_classes.size();
    DisjointSets sets(nx + ny);
    for (std::size_t b = 0; b < nx; ++b)
        for (std::size_t partner : d.x_classes[b].partners) sets.unite(b, nx + partner);
    merge_across_left_out(d.x_classes, 0, sets);
    merge_across_left_out(d.y_classes, nx, sets);

    std::vector<std::size_t> x_in(nx + ny, 0), y_in(nx + ny, 0);
    for (std::size_t v = 0; v < nx + ny; ++v) ++(v < nx ? x_in : y_in)[sets.find(v)];

    StructureCheck out;
    for (std::size_t root = 0; root < nx + ny; ++root) {
        if (x_in[root] < 2 || y_in[root] < 2) continue;
        out.ok = false;
        for (std::size_t v = 0; v < nx + ny; ++v) {
            if (sets.find(v) != root) continue;
            out.witness.push_back(v < nx ? BlockRef{Side::X, v} : BlockRef{Side::Y, v - nx});
        }
    }
    return out;
}

GapBound q_gap_bound(const BlockDecomposition& d, std::size_t n, int l, double delta_blocks) {
    if (n == 0 || l < 2) throw InvalidParameter("q_gap_bound needs n >= 1 and l >= 2");
    if (!(delta_blocks >= 0.0)) throw InvalidParameter("Delta must be nonnegative");
    if (!check_no_adjacent_leftout(d).ok)
        throw PreconditionViolation("alignment has adjacent left-out blocks between aligned blocks");
    const double expected = static_cast<double>(n) / l;
    for (std::size_t count : {d.x_blocks, d.y_blocks}) {
        if (std::abs(static_cast<double>(count) - expected) > delta_blocks)
            throw PreconditionViolation("block count " + std::to_string(count) + " differs from n/l by more than Delta");
    }
    GapBound g{};
    g.lhs = std::abs(d.q1 - d.q2);
    g.rhs = 1.5 * std::abs(d.delta1 - d.delta2) + 4.0 * l * delta_blocks / static_cast<double>(n);
    return g;
}

std::string to_report(const BlockDecomposition& d) {
    std::ostringstream os;
    os.precision(17);
    os << "l=" << d.l << '\n';
    if (d.p) {
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                os << "p_" << d.l - 1 + static_cast<int>(r) << '_' << d.l - 1 + static_cast<int>(c) << '='
                   << (*d.p)[r][c] << '\n';
    } else {
        os << "p=undefined\n";
    }
    os << "one_to_one_pairs=" << d.one_to_one_pairs << '\n'
       << "q1=" << d.q1 << '\n'
       << "q2=" << d.q2 << '\n'
       << "delta1=" << d.delta1 << '\n'
       << "delta2=" << d.delta2 << '\n'
       << "x_blocks=" << d.x_blocks << '\n'
       << "y_blocks=" << d.y_blocks << '\n';
    for (BlockKind k : {BlockKind::OneToOne, BlockKind::Polygamist, BlockKind::SharedTarget, BlockKind::LeftOut,
                        BlockKind::TruncatedTail}) {
        os << "x_" << to_string(k) << '=' << count_kind(d.x_classes, k) << '\n';
        os << "y_" << to_string(k) << '=' << count_kind(d.y_classes, k) << '\n';
    }
    return os.str();
}

}  // namespace blocklcs
