#include "blocklcs/events.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "blocklcs/errors.hpp"
#include "blocklcs/lcs.hpp"
#include "blocklcs/optimizer.hpp"
#include "blocklcs/parallel.hpp"
#include "blocklcs/rng.hpp"

namespace blocklcs {

namespace {

std::size_t complete_blocks(const BlockSequence& s) { return renewal_stats(s).block_count_at(s.n()); }

}  // namespace

bool event_C(const BlockSequence& x, const BlockSequence& y, int l) {
    const Interval in_x = block_count_interval(x.n(), l);
    const Interval in_y = block_count_interval(y.n(), l);
    return in_x.contains(static_cast<double>(complete_blocks(x))) &&
           in_y.contains(static_cast<double>(complete_blocks(y)));
}

namespace {

std::array<std::size_t, 3> count_lengths(const std::vector<int>& lengths, std::size_t m, int l) {
    std::array<std::size_t, 3> c{};
    for (std::size_t i = 0; i < m; ++i) {
        const int k = lengths[i] - (l - 1);
        if (k >= 0 && k <= 2) ++c[static_cast<std::size_t>(k)];
    }
    return c;
}

bool proportions_close(const std::array<std::size_t, 3>& c, std::size_t m, double delta) {
    for (std::size_t v : c)
        if (std::abs(3.0 * static_cast<double>(v) - static_cast<double>(m)) > 3.0 * delta * static_cast<double>(m))
            return false;
    return true;
}

}  // namespace

bool event_D(const std::vector<int>& x_lengths, const std::vector<int>& y_lengths, int l, double delta,
             std::size_t m) {
    if (m == 0 || m > x_lengths.size() || m > y_lengths.size())
        throw InvalidParameter("event D needs 1 <= m <= number of available blocks");
    return proportions_close(count_lengths(x_lengths, m, l), m, delta) &&
           proportions_close(count_lengths(y_lengths, m, l), m, delta);
}

std::size_t event_D_blocks(std::size_t n, int l) {
    return static_cast<std::size_t>(std::floor(block_count_interval(n, l).hi));
}

bool event_D_n(const std::vector<int>& x_lengths, const std::vector<int>& y_lengths, int l, double delta,
               std::size_t n) {
    const Interval in = block_count_interval(n, l);
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(in.lo)));
    const std::size_t hi = event_D_blocks(n, l);
    if (hi > x_lengths.size() || hi > y_lengths.size())
        throw InvalidParameter("event D^n needs " + std::to_string(hi) + " blocks per sequence");
    if (lo > hi) return true;
    auto cx = count_lengths(x_lengths, lo, l);
    auto cy = count_lengths(y_lengths, lo, l);
    for (std::size_t m = lo;; ++m) {
        if (!proportions_close(cx, m, delta) || !proportions_close(cy, m, delta)) return false;
        if (m == hi) return true;
        for (auto [lengths, counts] : {std::pair{&x_lengths, &cx}, std::pair{&y_lengths, &cy}}) {
            const int k = (*lengths)[m] - (l - 1);
            if (k >= 0 && k <= 2) ++(*counts)[static_cast<std::size_t>(k)];
        }
    }
}

bool event_G(const BlockSequence& x, const BlockSequence& y, double delta) {
    const std::size_t nx = complete_blocks(x);
    if (nx == 0) throw DegenerateInput("X has no complete block, so N^Y/N^X is undefined");
    return static_cast<double>(complete_blocks(y)) / static_cast<double>(nx) <= 1.0 + delta;
}

const char* to_string(AlignmentMode mode) noexcept {
    return mode == AlignmentMode::AllOptimal ? "all-optimal" : "leftmost";
}

namespace {

template <typename Predicate>
AlignmentEventResult alignment_event(const BlockSequence& x, const BlockSequence& y, int l,
                                     const AlignmentEventOptions& options, Predicate&& pred) {
    const std::string xs = materialize(x);
    const std::string ys = materialize(y);
    AlignmentEventResult r;
    if (xs.size() <= options.enumeration_guard && ys.size() <= options.enumeration_guard) {
        r.mode = AlignmentMode::AllOptimal;
        const auto all = enumerate_optimal_alignments(xs, ys, options.max_alignments, options.enumeration_guard);
        r.complete = all.complete;
        r.alignments = all.alignments.size();
        for (const auto& a : all.alignments) {
            if (!pred(decompose(x, y, a, l))) {
                r.holds = false;
                break;
            }
        }
        return r;
    }
    r.mode = AlignmentMode::Leftmost;
    r.alignments = 1;
    r.holds = pred(decompose(x, y, leftmost_optimal_alignment(xs, ys), l));
    return r;
}

}  // namespace

AlignmentEventResult event_F(const BlockSequence& x, const BlockSequence& y, int l, double q,
                             const AlignmentEventOptions& options) {
    return alignment_event(x, y, l, options,
                           [&](const BlockDecomposition& d) { return d.q1 <= q && d.q2 <= q; });
}

AlignmentEventResult event_J(const BlockSequence& x, const BlockSequence& y, int l, double delta,
                             const AlignmentEventOptions& options) {
    return alignment_event(x, y, l, options,
                           [&](const BlockDecomposition& d) { return d.delta1 <= delta && d.delta2 <= delta; });
}

namespace {

void validate_model(int l, std::size_t n) {
    if (l < 2) throw InvalidParameter("l must be >= 2");
    if (n < 1) throw InvalidParameter("n must be >= 1");
}

EventReport make_report(std::string name, std::map<std::string, double> params, const std::vector<char>& holds,
                        std::string mode = {}) {
    EventReport r;
    r.event_name = std::move(name);
    r.parameters = std::move(params);
    r.replicates = holds.size();
    r.mode = std::move(mode);
    for (std::size_t i = 0; i < holds.size(); ++i) {
        if (holds[i])
            ++r.holds;
        else
            r.failures.push_back(i);
    }
    r.hold_frequency = holds.empty() ? 0.0 : static_cast<double>(r.holds) / static_cast<double>(holds.size());
    return r;
}

}  // namespace

EventsRun run_events(const EventsConfig& config) {
    validate_model(config.l, config.n);
    const int l = config.l;
    const std::size_t R = config.replicates;
    const double q = config.q < 0.0 ? default_q0(l) + 0.02 : config.q;
    const std::size_t d_blocks = event_D_blocks(config.n, l);

    std::vector<char> c(R), d(R), g(R), f(R), j(R);
    std::vector<std::string> f_mode(R), j_mode(R);
    parallel_for(R, config.jobs, [&](std::size_t r) {
        const ReplicateSeeds seeds = replicate_seeds(config.seed, r);
        const BlockSequence x = sample_block_sequence(l, config.n, seeds.x);
        const BlockSequence y = sample_block_sequence(l, config.n, seeds.y);
        c[r] = event_C(x, y, l);
        d[r] = d_blocks == 0 || event_D_n(sample_block_lengths(l, d_blocks, seeds.x),
                                          sample_block_lengths(l, d_blocks, seeds.y), l, config.delta, config.n);
        g[r] = event_G(x, y, config.delta);
        if (config.alignment_events) {
            const auto fr = event_F(x, y, l, q, config.alignment);
            const auto jr = event_J(x, y, l, config.delta, config.alignment);
            f[r] = fr.holds;
            j[r] = jr.holds;
            f_mode[r] = to_string(fr.mode);
            j_mode[r] = to_string(jr.mode);
        }
    });

    const double n = static_cast<double>(config.n);
    EventsRun run;
    run.reports.push_back(make_report("C", {{"n", n}, {"l", l}}, c));
    run.reports.push_back(make_report("D", {{"n", n}, {"l", l}, {"delta", config.delta}}, d));
    run.reports.push_back(make_report("G", {{"n", n}, {"l", l}, {"delta", config.delta}}, g));
    if (config.alignment_events) {
        run.reports.push_back(make_report("F", {{"n", n}, {"l", l}, {"q", q}}, f, R ? f_mode.front() : ""));
        run.reports.push_back(make_report("J", {{"n", n}, {"l", l}, {"delta", config.delta}}, j, R ? j_mode.front() : ""));
    }
    for (std::size_t r = 0; r < R; ++r) {
        const ReplicateSeeds seeds = replicate_seeds(config.seed, r);
        run.rows.push_back({r, seeds.x, seeds.y, "C", c[r] != 0});
        run.rows.push_back({r, seeds.x, seeds.y, "D", d[r] != 0});
        run.rows.push_back({r, seeds.x, seeds.y, "G", g[r] != 0});
        if (config.alignment_events) {
            run.rows.push_back({r, seeds.x, seeds.y, "F", f[r] != 0});
            run.rows.push_back({r, seeds.x, seeds.y, "J", j[r] != 0});
        }
    }
    return run;
}

std::vector<std::size_t> sample_lcs(int l, std::size_t n, std::size_t replicates, std::uint64_t seed,
                                    unsigned jobs) {
    validate_model(l, n);
    std::vector<std::size_t> out(replicates);
    parallel_for(replicates, jobs, [&](std::size_t r) {
        const ReplicateSeeds seeds = replicate_seeds(seed, r);
        out[r] = lcs_length_fast(materialize(sample_block_sequence(l, n, seeds.x)),
                                 materialize(sample_block_sequence(l, n, seeds.y)));
    });
    return out;
}

GammaEstimate estimate_gamma(int l, std::size_t n, std::size_t replicates, std::uint64_t seed, unsigned jobs) {
    if (replicates < 2) throw InvalidParameter("gamma estimate needs at least 2 replicates");
    const auto lcs = sample_lcs(l, n, replicates, seed, jobs);
    GammaEstimate g;
    g.ratios.reserve(lcs.size());
    for (std::size_t v : lcs) g.ratios.push_back(static_cast<double>(v) / static_cast<double>(n));
    const Summary s = summarize(g.ratios);
    g.mean = s.mean;
    g.standard_error = s.stderr_mean;
    return g;
}

VarianceReport variance_from_samples(const std::vector<std::size_t>& n_grid,
                                     const std::vector<std::vector<double>>& samples, std::uint64_t seed,
                                     std::size_t bootstrap_resamples) {
    if (n_grid.size() != samples.size()) throw InvalidParameter("one sample per grid point is required");
    VarianceReport rep;
    rep.bootstrap_resamples = bootstrap_resamples;
    const auto variance_stat = [](std::span<const double> v) { return sample_variance(v); };
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        VarianceRow row;
        row.n = n_grid[i];
        row.seed = derive_seed(seed, i);
        row.values = samples[i];
        const Summary s = summarize(row.values);
        row.mean = s.mean;
        row.variance = s.variance;
        row.variance_over_n = s.variance / static_cast<double>(row.n);
        if (bootstrap_resamples > 0)
            row.variance_ci = bootstrap_ci(row.values, variance_stat, bootstrap_resamples, 0.95,
                                           derive_seed(row.seed, 0xB007));
        rep.rows.push_back(std::move(row));
    }

    double lo = INFINITY, hi = 0.0;
    for (const auto& row : rep.rows) {
        lo = std::min(lo, row.variance_over_n);
        hi = std::max(hi, row.variance_over_n);
    }
    rep.ratio_spread = lo > 0.0 ? hi / lo : INFINITY;

    const bool fit = rep.rows.size() >= 2 && lo > 0.0;
    if (fit) {
        std::vector<double> lx, ly;
        for (const auto& row : rep.rows) {
            lx.push_back(std::log(static_cast<double>(row.n)));
            ly.push_back(std::log(row.variance));
        }
        rep.slope = least_squares(lx, ly).slope;
        if (bootstrap_resamples > 0) {
            Rng rng(derive_seed(seed, 0x51095));
            std::vector<double> slopes;
            slopes.reserve(bootstrap_resamples);
            std::vector<double> draw;
            for (std::size_t b = 0; b < bootstrap_resamples; ++b) {
                std::vector<double> by;
                for (const auto& row : rep.rows) {
                    draw.resize(row.values.size());
                    for (auto& v : draw) v = row.values[rng.uniform_below(row.values.size())];
                    by.push_back(std::log(std::max(sample_variance(draw), 1e-300)));
                }
                slopes.push_back(least_squares(lx, by).slope);
            }
            rep.slope_ci = {quantile(slopes, 0.025), quantile(slopes, 0.975)};
        }
    }
    return rep;
}

VarianceReport estimate_variance(int l, const std::vector<std::size_t>& n_grid, std::size_t replicates,
                                 std::uint64_t seed, unsigned jobs, std::size_t bootstrap_resamples) {
    if (replicates < 30) throw InvalidParameter("variance estimate needs at least 30 replicates");
    if (n_grid.empty()) throw InvalidParameter("variance estimate needs a nonempty n grid");
    for (std::size_t n : n_grid)
        if (n < static_cast<std::size_t>(std::max(l, 1))) throw InvalidParameter("every grid n must be >= l");
    std::vector<std::vector<double>> samples;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const auto lcs = sample_lcs(l, n_grid[i], replicates, derive_seed(seed, i), jobs);
        samples.emplace_back(lcs.begin(), lcs.end());
    }
    return variance_from_samples(n_grid, samples, seed, bootstrap_resamples);
}

BiasRun run_bias(const BiasConfig& config) {
    validate_model(config.l, config.n);
    BiasRun run;
    run.records.resize(config.replicates);
    parallel_for(config.replicates, config.jobs, [&](std::size_t r) {
        const ReplicateSeeds seeds = replicate_seeds(config.seed, r);
        const BlockSequence x = sample_block_sequence(config.l, config.n, seeds.x);
        const BlockSequence y = sample_block_sequence(config.l, config.n, seeds.y);
        BiasRecord& rec = run.records[r];
        rec.replicate = r;
        rec.seed = config.seed;
        rec.n = config.n;
        rec.l = config.l;
        try {
            ConditionalOptions opts = config.conditional;
            opts.seed = seeds.aux;
            opts.jobs = 1;
            const ConditionalEstimate est = conditional_expectation(x, y, config.l, opts);
            rec.lcs = est.base_lcs;
            rec.expectation = est.value;
            rec.standard_error = est.standard_error;
            rec.eligible_pairs = est.eligible_pairs;
            rec.status = est.exact ? "exact" : "sampled";
        } catch (const UndefinedConditional&) {
            rec.lcs = lcs_length_fast(materialize(x), materialize(y));
            rec.status = "undefined-conditional";
        }
    });
    double sum = 0.0;
    for (const auto& rec : run.records) {
        if (rec.status == "undefined-conditional") {
            ++run.undefined;
            continue;
        }
        ++run.defined;
        sum += rec.expectation;
        if (rec.expectation > 0.0) ++run.positive;
    }
    if (run.defined > 0) {
        run.positive_fraction = static_cast<double>(run.positive) / static_cast<double>(run.defined);
        run.mean_expectation = sum / static_cast<double>(run.defined);
    }
    return run;
}

}  // namespace blocklcs
