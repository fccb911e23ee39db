#include "blocklcs/modification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "blocklcs/bitlcs.hpp"
#include "blocklcs/errors.hpp"
#include "blocklcs/optimizer.hpp"
#include "blocklcs/parallel.hpp"
#include "blocklcs/rng.hpp"
#include "blocklcs/stats.hpp"

namespace blocklcs {

Rational Rational::of(std::int64_t num, std::int64_t den) {
    if (den == 0) throw UndefinedValue("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

namespace {

bool eligible(const BlockSequence& x, std::size_t b, int target) {
    return !x.is_truncated_block(b) && x.block_lengths()[b] == target;
}

}  // namespace

BlockSequence apply_modification(const BlockSequence& x, int l, std::size_t grow_index, std::size_t shrink_index) {
    if (grow_index >= x.stored_blocks() || shrink_index >= x.stored_blocks())
        throw InvalidModification("block index out of range");
    if (!eligible(x, grow_index, l - 1))
        throw InvalidModification("block " + std::to_string(grow_index) + " is not a whole block of length l-1");
    if (!eligible(x, shrink_index, l + 1))
        throw InvalidModification("block " + std::to_string(shrink_index) + " is not a whole block of length l+1");
    std::vector<int> lengths = x.block_lengths();
    lengths[grow_index] = l;
    lengths[shrink_index] = l;
    return BlockSequence(x.first_symbol(), std::move(lengths), x.n());
}

Eligible eligible_blocks(const BlockSequence& x, int l) {
    Eligible e;
    for (std::size_t b = 0; b < x.stored_blocks(); ++b) {
        if (eligible(x, b, l - 1)) e.grow.push_back(b);
        if (eligible(x, b, l + 1)) e.shrink.push_back(b);
    }
    return e;
}

namespace {

Eligible require_eligible(const BlockSequence& x, int l) {
    if (l < 2) throw InvalidParameter("l must be >= 2");
    Eligible e = eligible_blocks(x, l);
    if (e.grow.empty()) throw UndefinedConditional("x has no whole block of length l-1");
    if (e.shrink.empty()) throw UndefinedConditional("x has no whole block of length l+1");
    return e;
}

// Bit positions touched by the modification: the grown block receives its
// symbol at insert_at (before x[insert_at]); the shrunk block loses x[erase_at].
std::size_t insert_position(const BlockSequence& x, std::size_t g) {
    return x.block_start(g) + static_cast<std::size_t>(x.block_lengths()[g]);
}
std::size_t erase_position(const BlockSequence& x, std::size_t s) {
    return x.block_start(s) + static_cast<std::size_t>(x.block_lengths()[s]) - 1;
}
char block_char(const BlockSequence& x, std::size_t b) { return x.block_symbol(b) == 1 ? '1' : '0'; }

std::string modified_bits(const std::string& bits, const BlockSequence& x, std::size_t g, std::size_t s) {
    std::string out = bits;
    const std::size_t ins = insert_position(x, g);
    const std::size_t del = erase_position(x, s);
    // Erase first when it lies after the insertion point so indices stay valid.
    if (del >= ins) {
        out.erase(del, 1);
        out.insert(ins, 1, block_char(x, g));
    } else {
        out.insert(ins, 1, block_char(x, g));
        out.erase(del, 1);
    }
    return out;
}

std::vector<int> naive_deltas(const BlockSequence& x, const BlockSequence& y, const Eligible& e, unsigned jobs) {
    const std::string xs = materialize(x);
    const std::string ys = materialize(y);
    const auto base = static_cast<int>(lcs_length_fast(xs, ys));
    std::vector<int> out(e.pairs());
    parallel_for(e.grow.size(), jobs, [&](std::size_t gi) {
        for (std::size_t si = 0; si < e.shrink.size(); ++si) {
            const std::string mod = modified_bits(xs, x, e.grow[gi], e.shrink[si]);
            out[gi * e.shrink.size() + si] = static_cast<int>(lcs_length_fast(mod, ys)) - base;
        }
    });
    return out;
}

// For a pair with grow block before shrink block, the modified string is
// P + c + M + S with P = x[..ins), M = x[ins..del), S = x[del+1..). Its LCS
// with y combines the forward state of P c M with the backward state of S.
// One forward sweep per grow block visits every later shrink point; one per
// shrink block visits every later grow point (there the suffix is c x[ins..)).
std::vector<int> sweep_deltas(const BlockSequence& x, const BlockSequence& y, const Eligible& e, unsigned jobs) {
    const std::string xs = materialize(x);
    const std::string ys = materialize(y);
    const std::size_t n = xs.size();
    const std::size_t m = ys.size();
    const BitLcsKernel fwd(ys);
    const BitLcsKernel bwd(reversed(ys));
    const std::size_t W = fwd.words();

    const std::size_t G = e.grow.size();
    const std::size_t S = e.shrink.size();
    std::vector<std::size_t> ins(G), del(S);
    for (std::size_t i = 0; i < G; ++i) ins[i] = insert_position(x, e.grow[i]);
    for (std::size_t i = 0; i < S; ++i) del[i] = erase_position(x, e.shrink[i]);

    // Forward prefix states F(x[..ins_g)) and F(x[..del_s)).
    std::vector<Word> grow_prefix(G * W), shrink_prefix(S * W);
    {
        auto state = fwd.initial_state();
        std::size_t gi = 0, si = 0;
        for (std::size_t pos = 0; pos <= n; ++pos) {
            while (gi < G && ins[gi] == pos) std::copy(state.begin(), state.end(), grow_prefix.begin() + static_cast<std::ptrdiff_t>(gi++ * W));
            while (si < S && del[si] == pos) std::copy(state.begin(), state.end(), shrink_prefix.begin() + static_cast<std::ptrdiff_t>(si++ * W));
            if (pos < n) fwd.step(state, xs[pos]);
        }
    }
    // Oriented backward states of c_g x[ins_g..) and x[del_s+1..).
    std::vector<Word> grow_suffix(G * W), shrink_suffix(S * W);
    {
        auto state = bwd.initial_state();
        std::size_t gi = G, si = S;
        for (std::size_t pos = n;; --pos) {
            // state covers x[pos..n)
            while (gi > 0 && ins[gi - 1] == pos) {
                --gi;
                auto with_symbol = state;
                bwd.step(with_symbol, block_char(x, e.grow[gi]));
                const auto oriented = to_reference_orientation(with_symbol, m);
                std::copy(oriented.begin(), oriented.end(), grow_suffix.begin() + static_cast<std::ptrdiff_t>(gi * W));
            }
            while (si > 0 && del[si - 1] + 1 == pos) {
                --si;
                const auto oriented = to_reference_orientation(state, m);
                std::copy(oriented.begin(), oriented.end(), shrink_suffix.begin() + static_cast<std::ptrdiff_t>(si * W));
            }
            if (pos == 0) break;
            bwd.step(state, xs[pos - 1]);
        }
    }

    auto full = fwd.initial_state();
    fwd.run(full, xs);
    const auto base = static_cast<int>(fwd.value(full));

    std::vector<int> out(G * S, 0);
    parallel_for(G + S, jobs, [&](std::size_t task) {
        std::vector<Word> state(W);
        if (task < G) {
            const std::size_t gi = task;
            std::copy_n(grow_prefix.begin() + static_cast<std::ptrdiff_t>(gi * W), W, state.begin());
            fwd.step(state, block_char(x, e.grow[gi]));
            std::size_t pos = ins[gi];
            for (std::size_t si = 0; si < S; ++si) {
                if (e.shrink[si] < e.grow[gi]) continue;
                for (; pos < del[si]; ++pos) fwd.step(state, xs[pos]);
                const std::span<const Word> suffix(shrink_suffix.data() + si * W, W);
                out[gi * S + si] = static_cast<int>(combine_split_oriented(state, suffix, m)) - base;
            }
        } else {
            const std::size_t si = task - G;
            std::copy_n(shrink_prefix.begin() + static_cast<std::ptrdiff_t>(si * W), W, state.begin());
            std::size_t pos = del[si] + 1;
            for (std::size_t gi = 0; gi < G; ++gi) {
                if (e.grow[gi] < e.shrink[si]) continue;
                for (; pos < ins[gi]; ++pos) fwd.step(state, xs[pos]);
                const std::span<const Word> suffix(grow_suffix.data() + gi * W, W);
                out[gi * S + si] = static_cast<int>(combine_split_oriented(state, suffix, m)) - base;
            }
        }
    });
    return out;
}

std::vector<int> deltas(const BlockSequence& x, const BlockSequence& y, const Eligible& e, EnumerationMethod method,
                        unsigned jobs) {
    return method == EnumerationMethod::Sweep ? sweep_deltas(x, y, e, jobs) : naive_deltas(x, y, e, jobs);
}

}  // namespace

std::vector<ModificationOutcome> enumerate_modifications(const BlockSequence& x, const BlockSequence& y, int l,
                                                         EnumerationMethod method, unsigned jobs) {
    const Eligible e = require_eligible(x, l);
    const auto d = deltas(x, y, e, method, jobs);
    std::vector<ModificationOutcome> out;
    out.reserve(d.size());
    for (std::size_t gi = 0; gi < e.grow.size(); ++gi)
        for (std::size_t si = 0; si < e.shrink.size(); ++si)
            out.push_back({e.grow[gi], e.shrink[si], d[gi * e.shrink.size() + si]});
    return out;
}

Rational exact_conditional_expectation(const BlockSequence& x, const BlockSequence& y, int l,
                                       EnumerationMethod method, unsigned jobs) {
    const Eligible e = require_eligible(x, l);
    const auto d = deltas(x, y, e, method, jobs);
    const std::int64_t total = std::accumulate(d.begin(), d.end(), std::int64_t{0});
    return Rational::of(total, static_cast<std::int64_t>(d.size()));
}

ConditionalEstimate sampled_conditional_expectation(const BlockSequence& x, const BlockSequence& y, int l,
                                                    std::size_t k, std::uint64_t seed) {
    if (k == 0) throw InvalidParameter("sample count must be >= 1");
    const Eligible e = require_eligible(x, l);
    const std::string xs = materialize(x);
    const std::string ys = materialize(y);
    ConditionalEstimate est;
    est.base_lcs = lcs_length_fast(xs, ys);
    est.eligible_pairs = e.pairs();
    est.samples = k;
    Rng rng(seed);
    std::vector<double> draws(k);
    for (auto& v : draws) {
        const std::size_t g = e.grow[rng.uniform_below(e.grow.size())];
        const std::size_t s = e.shrink[rng.uniform_below(e.shrink.size())];
        v = static_cast<double>(lcs_length_fast(modified_bits(xs, x, g, s), ys)) - static_cast<double>(est.base_lcs);
    }
    const Summary sum = summarize(draws);
    est.value = sum.mean;
    est.standard_error = k >= 2 ? sum.stderr_mean : std::numeric_limits<double>::quiet_NaN();
    return est;
}

ConditionalEstimate conditional_expectation(const BlockSequence& x, const BlockSequence& y, int l,
                                            const ConditionalOptions& options) {
    const Eligible e = require_eligible(x, l);
    if (e.pairs() > options.pair_budget)
        return sampled_conditional_expectation(x, y, l, options.samples, options.seed);
    ConditionalEstimate est;
    const Rational r = exact_conditional_expectation(x, y, l, EnumerationMethod::Sweep, options.jobs);
    est.exact = true;
    est.exact_value = r;
    est.value = r.to_double();
    est.eligible_pairs = e.pairs();
    est.samples = e.pairs();
    est.base_lcs = lcs_length_fast(materialize(x), materialize(y));
    return est;
}

Rational fixed_alignment_expectation(const BlockSequence& x, const BlockSequence& y, const Alignment& a, int l) {
    const Eligible e = require_eligible(x, l);
    const BlockDecomposition d = decompose(x, y, a, l);
    std::vector<std::size_t> matched(x.stored_blocks(), 0);
    const auto xb = x.block_of_position();
    for (const auto& pair : a.pairs) ++matched[xb[pair.i - 1]];

    std::int64_t gains = 0;
    for (std::size_t g : e.grow) {
        const BlockClass& c = d.x_classes[g];
        if (c.kind == BlockKind::OneToOne &&
            y.visible_length(c.partners.front()) > static_cast<std::size_t>(x.block_lengths()[g]))
            ++gains;
    }
    std::int64_t losses = 0;
    for (std::size_t s : e.shrink)
        if (matched[s] == static_cast<std::size_t>(x.block_lengths()[s])) ++losses;

    const auto G = static_cast<std::int64_t>(e.grow.size());
    const auto S = static_cast<std::int64_t>(e.shrink.size());
    return Rational::of(gains * S - losses * G, G * S);
}

LowerBound alignment_lower_bound(const BlockDecomposition& d, std::optional<double> q) {
    if (!d.p) throw UndefinedValue("p is undefined: the alignment has no one-to-one block pair");
    LowerBound lb{};
    lb.q_approximated = !q.has_value();
    lb.q = q.value_or(std::max(d.q1, d.q2));
    lb.value = objective(FeasiblePoint{lb.q, *d.p});
    return lb;
}

std::string bias_csv_header() { return "replicate,seed,n,l,L_n,E_exact_or_sampled,stderr,eligible_pairs,status"; }

std::string to_csv_row(const BiasRecord& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.replicate << ',' << r.seed << ',' << r.n << ',' << r.l << ',' << r.lcs << ',' << r.expectation << ',' << r.standard_error << ','
       << r.eligible_pairs << ',' << r.status;
    return os.str();
}

}  // namespace blocklcs
