#include <doctest.h>

#include <cmath>

#include "blocklcs/bounds.hpp"
#include "blocklcs/errors.hpp"
#include "blocklcs/events.hpp"
#include "blocklcs/lcs.hpp"
#include "blocklcs/rng.hpp"
#include "support/generators.hpp"

using namespace blocklcs;

namespace {

BlockSequence uniform_blocks(int length, std::size_t blocks) {
    return BlockSequence(0, std::vector<int>(blocks, length), static_cast<std::size_t>(length) * blocks);
}

}  // namespace

TEST_CASE("event C: block counts inside I_n") {
    testgen::Gen g(71);
    for (int r = 0; r < 20; ++r) {
        const auto [x, y] = g.model_pair(6, 100000);
        CHECK(event_C(x, y, 6));
    }
    // n/l + 2 n^0.6 blocks: lengths l-1 throughout at n = 10^4 are too many.
    const std::size_t n = 10000;
    const auto many = BlockSequence(0, std::vector<int>(n / 2, 2), n);
    CHECK(many.block_count() > n / 6 + 2 * std::pow(n, 0.6));
    CHECK_FALSE(event_C(many, many, 6));
}

TEST_CASE("event D: length proportions") {
    const std::vector<int> same(30, 6);
    CHECK_FALSE(event_D(same, same, 6, 0.5, 30));
    CHECK(event_D(same, same, 6, 2.0 / 3, 30));
    const std::vector<int> balanced{5, 6, 7, 5, 6, 7};
    CHECK(event_D(balanced, balanced, 6, 0.0, 6));
    CHECK_THROWS_AS(event_D(balanced, balanced, 6, 0.1, 7), InvalidParameter);

    const std::size_t n = 100000;
    const std::size_t need = event_D_blocks(n, 6);
    CHECK(need == static_cast<std::size_t>(std::floor(n / 6.0 + std::pow(n, 0.6))));
    int holds = 0;
    for (std::uint64_t s = 0; s < 20; ++s)
        holds += event_D_n(sample_block_lengths(6, need, 2 * s), sample_block_lengths(6, need, 2 * s + 1), 6, 0.05, n);
    CHECK(holds == 20);
    CHECK_THROWS_AS(event_D_n(balanced, balanced, 6, 0.05, n), InvalidParameter);
}

TEST_CASE("event G: block-count ratio") {
    const auto x = uniform_blocks(3, 20);
    CHECK(event_G(x, x, 0.0));
    const auto y = uniform_blocks(3, 24);
    CHECK_FALSE(event_G(x, y, 0.1));
    CHECK(event_G(y, x, 0.1));
    CHECK_THROWS_AS(event_G(BlockSequence(0, {9}, 4), x, 0.1), DegenerateInput);
}

TEST_CASE("event F on the worked example") {
    const auto x = BlockSequence::from_bits("00110011100011000");
    const auto y = BlockSequence::from_bits("00001111000011000");
    // All optimal alignments are enumerated here; the worked alignment has q1 = 1/7.
    const auto at_seventh = event_F(x, y, 3, 1.0 / 7);
    CHECK(at_seventh.mode == AlignmentMode::AllOptimal);
    CHECK(at_seventh.alignments >= 1);
    const auto at_eighth = event_F(x, y, 3, 1.0 / 8);
    CHECK_FALSE(at_eighth.holds);
    CHECK(event_F(x, y, 3, 1.0).holds);
}

TEST_CASE("event F switches to the leftmost alignment above the guard") {
    const auto x = sample_block_sequence(6, 200, 1);
    const auto y = sample_block_sequence(6, 200, 2);
    const auto r = event_F(x, y, 6, 1.0);
    CHECK(r.mode == AlignmentMode::Leftmost);
    CHECK(r.alignments == 1);
    CHECK(r.holds);
    CHECK(std::string(to_string(AlignmentMode::Leftmost)) == "leftmost");
    CHECK(std::string(to_string(AlignmentMode::AllOptimal)) == "all-optimal");
}

TEST_CASE("event J: tail left-out proportion") {
    const auto x = BlockSequence::from_bits("0011001100110011001100");
    CHECK(event_J(x, x, 3, 0.0).holds);
    // Ten blocks in x, the last two left out.
    const auto xs = BlockSequence::from_bits("000111000111000111000111000111");
    const auto ys = BlockSequence::from_bits("000111000111000111000111");
    const auto r = event_J(xs, ys, 3, 0.1);
    CHECK(r.mode == AlignmentMode::AllOptimal);
    CHECK_FALSE(r.holds);
    CHECK(event_J(xs, ys, 3, 0.2).holds);
}

TEST_CASE("run_events is reproducible and reports every replicate") {
    EventsConfig c;
    c.n = 20000;
    c.replicates = 12;
    c.seed = 5;
    c.alignment_events = true;
    const auto a = run_events(c);
    c.jobs = 3;
    const auto b = run_events(c);
    REQUIRE(a.reports.size() == 5);
    CHECK(a.reports[0].event_name == "C");
    CHECK(a.reports[3].event_name == "F");
    CHECK(a.reports[3].mode == "leftmost");
    CHECK(a.rows.size() == 12 * 5);
    for (std::size_t k = 0; k < a.reports.size(); ++k) {
        CHECK(a.reports[k].holds == b.reports[k].holds);
        CHECK(a.reports[k].failures == b.reports[k].failures);
        CHECK(a.reports[k].hold_frequency ==
              doctest::Approx(static_cast<double>(a.reports[k].holds) / 12.0));
    }
    CHECK(a.rows.front().seed_x == replicate_seeds(5, 0).x);
}

TEST_CASE("gamma estimate") {
    const auto g = estimate_gamma(6, 10000, 20, 3);
    CHECK(g.ratios.size() == 20);
    CHECK(g.mean >= gamma_lower_bound(6) - 3.0 * g.standard_error);
    CHECK(g.mean <= 1.0);
    const auto tiny = estimate_gamma(6, 6, 10, 4);
    CHECK(tiny.mean > 0.0);
    CHECK(tiny.mean <= 1.0);
    CHECK_THROWS_AS(estimate_gamma(6, 100, 1, 1), InvalidParameter);
    const auto lcs = sample_lcs(6, 500, 5, 3);
    const auto again = sample_lcs(6, 500, 5, 3, 2);
    CHECK(lcs == again);
    const auto seeds = replicate_seeds(3, 2);
    CHECK(lcs[2] == lcs_length_fast(materialize(sample_block_sequence(6, 500, seeds.x)),
                                     materialize(sample_block_sequence(6, 500, seeds.y))));
}

TEST_CASE("variance from constant samples is zero") {
    const std::vector<std::vector<double>> samples{std::vector<double>(40, 5.0), std::vector<double>(40, 5.0)};
    const auto rep = variance_from_samples({100, 200}, samples, 1, 50);
    CHECK(rep.rows[0].variance == 0.0);
    CHECK(rep.rows[1].variance_over_n == 0.0);
}

TEST_CASE("variance report") {
    const auto rep = estimate_variance(6, {500, 1000, 2000}, 40, 9, 1, 200);
    REQUIRE(rep.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rep.rows[i].seed == derive_seed(9, i));
        CHECK(rep.rows[i].values.size() == 40);
        CHECK(rep.rows[i].variance > 0.0);
        CHECK(rep.rows[i].variance_ci.lo <= rep.rows[i].variance);
        CHECK(rep.rows[i].variance <= rep.rows[i].variance_ci.hi);
    }
    CHECK(rep.slope_ci.lo <= rep.slope);
    CHECK(rep.slope <= rep.slope_ci.hi);
    CHECK(rep.ratio_spread >= 1.0);
    CHECK_THROWS_AS(estimate_variance(6, {500}, 10, 1), InvalidParameter);
}

TEST_CASE("bias run") {
    BiasConfig c;
    c.n = 600;
    c.l = 4;
    c.replicates = 8;
    c.seed = 2;
    const auto run = run_bias(c);
    REQUIRE(run.records.size() == 8);
    CHECK(run.defined + run.undefined == 8);
    for (const auto& r : run.records) {
        CHECK(r.seed == 2);
        if (r.status == "exact") {
            const auto seeds = replicate_seeds(2, r.replicate);
            const auto x = sample_block_sequence(4, 600, seeds.x);
            const auto y = sample_block_sequence(4, 600, seeds.y);
            CHECK(r.expectation == doctest::Approx(exact_conditional_expectation(x, y, 4).to_double()));
            CHECK(r.lcs == lcs_length_fast(materialize(x), materialize(y)));
        }
    }
    c.jobs = 2;
    const auto again = run_bias(c);
    for (std::size_t k = 0; k < 8; ++k) CHECK(again.records[k].expectation == run.records[k].expectation);
}
