#include <doctest.h>

#include <cmath>

#include "blocklcs/block_alignment.hpp"
#include "blocklcs/errors.hpp"
#include "blocklcs/lcs.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace blocklcs;

namespace {

/// Builds an alignment from two gapped rows of equal width ('-' = gap).
Alignment from_rows(const std::string& top, const std::string& bottom) {
    Alignment a;
    std::size_t i = 0, j = 0;
    for (std::size_t c = 0; c < top.size(); ++c) {
        if (top[c] != '-') ++i;
        if (bottom[c] != '-') ++j;
        if (top[c] != '-' && bottom[c] != '-') a.pairs.push_back({i, j});
    }
    return a;
}

std::string strip(const std::string& row) {
    std::string s;
    for (char c : row)
        if (c != '-') s += c;
    return s;
}

Alignment random_alignment(testgen::Gen& g, const std::string& x, const std::string& y) {
    Alignment a;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const std::size_t move = g.size(0, 3);
        if (move == 0) ++i;
        else if (move == 1) ++j;
        else if (x[i] == y[j]) {
            a.pairs.push_back({i + 1, j + 1});
            ++i;
            ++j;
        } else {
            ++i;
        }
    }
    return a;
}

BlockKind to_kind(oracle::Kind k) {
    switch (k) {
        case oracle::Kind::OneToOne: return BlockKind::OneToOne;
        case oracle::Kind::Polygamist: return BlockKind::Polygamist;
        case oracle::Kind::SharedTarget: return BlockKind::SharedTarget;
        case oracle::Kind::LeftOut: return BlockKind::LeftOut;
    }
    return BlockKind::LeftOut;
}

}  // namespace

TEST_CASE("block-by-block example: six one-to-one pairs of weight 1/6") {
    const auto x = BlockSequence::from_bits("00110011110000111");
    const auto y = BlockSequence::from_bits("0011100001100001111");
    const auto d = decompose(x, y, block_by_block_alignment(x, y), 3);
    REQUIRE(d.p.has_value());
    const PairMatrix expected{{{1.0 / 6, 1.0 / 6, 1.0 / 6}, {0.0, 0.0, 1.0 / 6}, {1.0 / 6, 0.0, 1.0 / 6}}};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK((*d.p)[r][c] == doctest::Approx(expected[r][c]).epsilon(1e-15));
    CHECK(d.one_to_one_pairs == 6);
    CHECK(d.q1 == 0.0);
    CHECK(d.q2 == 0.0);
}

TEST_CASE("example with a left-out block: q1 = 1/7, q2 = 0") {
    const std::string top = "001100111-000-11000";
    const std::string bot = "00--001111000011000";
    const auto xs = strip(top), ys = strip(bot);
    REQUIRE(xs == "00110011100011000");
    REQUIRE(ys == "00001111000011000");
    const auto x = BlockSequence::from_bits(xs);
    const auto y = BlockSequence::from_bits(ys);
    const Alignment a = from_rows(top, bot);
    CHECK(a.score() == lcs_length(xs, ys));
    const auto d = decompose(x, y, a, 3);
    CHECK(d.x_blocks == 7);
    CHECK(d.y_blocks == 5);
    CHECK(d.q1 == doctest::Approx(1.0 / 7).epsilon(1e-15));
    CHECK(d.q2 == 0.0);
    REQUIRE(d.p.has_value());
    CHECK((*d.p)[kMid][kLong] == doctest::Approx(0.5));
    CHECK((*d.p)[kShort][kShort] == doctest::Approx(0.25));
    CHECK((*d.p)[kMid][kMid] == doctest::Approx(0.25));
    CHECK(d.x_classes[0].kind == BlockKind::SharedTarget);
    CHECK(d.x_classes[1].kind == BlockKind::LeftOut);
    CHECK(d.x_classes[2].kind == BlockKind::SharedTarget);
    CHECK(d.y_classes[0].kind == BlockKind::Polygamist);
    CHECK(d.y_classes[0].partners == std::vector<std::size_t>{0, 2});
}

TEST_CASE("empty alignment leaves everything out") {
    const auto x = BlockSequence::from_bits("001100");
    const auto y = BlockSequence::from_bits("110011");
    const auto d = decompose(x, y, Alignment{}, 3);
    CHECK(d.q1 == 1.0);
    CHECK(d.q2 == 1.0);
    CHECK_FALSE(d.p.has_value());
    CHECK(to_report(d).find("p=undefined") != std::string::npos);
}

TEST_CASE("decompose rejects invalid input") {
    const auto x = BlockSequence::from_bits("0011");
    const auto y = BlockSequence::from_bits("0011");
    CHECK_THROWS_AS(decompose(x, y, Alignment{{{1, 3}}}, 3), InvalidAlignment);
    const auto longx = BlockSequence::from_bits("000000011");
    CHECK_THROWS_AS(decompose(longx, y, Alignment{{{1, 1}, {8, 3}}}, 3), InvalidParameter);
    CHECK_THROWS_AS(block_by_block_alignment(BlockSequence::from_bits("01"), BlockSequence::from_bits("10")),
                    InvalidParameter);
}

TEST_CASE("classification matches the connection-graph oracle") {
    testgen::Gen g(31);
    for (int r = 0; r < 300; ++r) {
        const auto xs = g.runs(g.size(1, 40), 4);
        const auto ys = g.runs(g.size(1, 40), 4);
        const Alignment a = r % 2 ? random_alignment(g, xs, ys) : leftmost_optimal_alignment(xs, ys);
        oracle::Pairs pairs;
        for (const auto& m : a.pairs) pairs.emplace_back(m.i, m.j);
        const auto expected = oracle::classify(xs, ys, pairs);
        const auto x = BlockSequence::from_bits(xs);
        const auto y = BlockSequence::from_bits(ys);
        // l = 3 admits lengths 2..4; runs of length 1 only matter when one-to-one.
        BlockDecomposition d;
        try {
            d = decompose(x, y, a, 3);
        } catch (const InvalidParameter&) {
            continue;
        }
        REQUIRE(d.x_classes.size() == expected.x_kind.size());
        REQUIRE(d.y_classes.size() == expected.y_kind.size());
        std::size_t left_x = 0;
        for (std::size_t b = 0; b < expected.x_kind.size(); ++b) {
            CHECK(d.x_classes[b].kind == to_kind(expected.x_kind[b]));
            CHECK(std::vector<std::size_t>(expected.x_partners[b].begin(), expected.x_partners[b].end()) ==
                  d.x_classes[b].partners);
            left_x += expected.x_kind[b] == oracle::Kind::LeftOut;
        }
        for (std::size_t b = 0; b < expected.y_kind.size(); ++b)
            CHECK(d.y_classes[b].kind == to_kind(expected.y_kind[b]));
        CHECK(d.x_left_out == left_x);
        CHECK(d.q1 == doctest::Approx(static_cast<double>(left_x) / static_cast<double>(d.x_blocks)));
        if (d.p) {
            double total = 0.0;
            for (const auto& row : *d.p)
                for (double v : row) total += v;
            CHECK(total == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("truncated tail is classified apart and excluded") {
    const BlockSequence x(0, {3, 3, 4}, 8);
    const BlockSequence y(0, {3, 3, 3}, 9);
    const auto d = decompose(x, y, block_by_block_alignment(x, y), 3);
    CHECK(d.x_classes[2].kind == BlockKind::TruncatedTail);
    CHECK(d.x_blocks == 2);
    CHECK(d.y_blocks == 3);
    CHECK(d.one_to_one_pairs == 2);
    const auto inc = decompose(x, y, block_by_block_alignment(x, y), 3, TailPolicy::Include);
    CHECK(inc.x_blocks == 3);
}

TEST_CASE("tail left-out runs give delta") {
    // x = 00 11 00 11, y = 00 11: the last two blocks of x are left out.
    const auto x = BlockSequence::from_bits("00110011");
    const auto y = BlockSequence::from_bits("0011");
    const auto d = decompose(x, y, leftmost_optimal_alignment("00110011", "0011"), 3);
    CHECK(d.x_tail_left_out == 2);
    CHECK(d.delta1 == doctest::Approx(0.5));
    CHECK(d.delta2 == 0.0);
}

TEST_CASE("adjacent left-out blocks between aligned blocks are detected") {
    const std::string top = "----11001100";
    const std::string bot = "000011----00";
    const auto x = BlockSequence::from_bits(strip(top));
    const auto y = BlockSequence::from_bits(strip(bot));
    REQUIRE(materialize(x) == "11001100");
    REQUIRE(materialize(y) == "00001100");
    const auto d = decompose(x, y, from_rows(top, bot), 3);
    const auto c = check_no_adjacent_leftout(d);
    CHECK_FALSE(c.ok);
    CHECK(c.witness == std::vector<BlockRef>{{Side::X, 1}, {Side::X, 2}});
    CHECK_THROWS_AS(q_gap_bound(d, 8, 3, 10.0), PreconditionViolation);
}

TEST_CASE("alignments without left-out blocks pass both structure checks") {
    testgen::Gen g(32);
    for (int r = 0; r < 50; ++r) {
        auto x = g.model(4, g.size(10, 300));
        auto y = g.model(4, g.size(10, 300));
        if (x.first_symbol() != y.first_symbol()) y = BlockSequence(x.first_symbol(), y.block_lengths(), y.n());
        const auto d = decompose(x, y, block_by_block_alignment(x, y), 4);
        CHECK(check_no_adjacent_leftout(d).ok);
        CHECK(check_no_many_to_many(d).ok);
    }
}

TEST_CASE("several-with-several alignment is detected") {
    // Leave out the second block of both sequences and align the merged neighbours.
    const std::string xs = "0001111000111100000";
    const std::string ys = "0001111000001110000";
    Alignment a;
    for (std::size_t k = 0; k < 3; ++k) a.pairs.push_back({k + 1, k + 1});
    for (std::size_t k = 0; k < 3; ++k) a.pairs.push_back({8 + k, 8 + k});
    for (std::size_t k = 0; k < 3; ++k) a.pairs.push_back({11 + k, 13 + k});
    for (std::size_t k = 0; k < 4; ++k) a.pairs.push_back({15 + k, 16 + k});
    validate_alignment(a, xs, ys);
    const auto d = decompose(BlockSequence::from_bits(xs), BlockSequence::from_bits(ys), a, 4);
    CHECK(d.x_classes[1].kind == BlockKind::LeftOut);
    CHECK(d.y_classes[1].kind == BlockKind::LeftOut);
    const auto c = check_no_many_to_many(d);
    CHECK_FALSE(c.ok);
    const std::vector<BlockRef> expected{{Side::X, 0}, {Side::X, 2}, {Side::Y, 0}, {Side::Y, 2}};
    CHECK(c.witness == expected);
    CHECK(a.score() < lcs_length(xs, ys));
}

TEST_CASE("leftmost optimal alignments satisfy both structure lemmas") {
    testgen::Gen g(33);
    for (int r = 0; r < 40; ++r) {
        const auto [x, y] = g.model_pair(6, 2000);
        const auto d = decompose(x, y, leftmost_optimal_alignment(materialize(x), materialize(y)), 6);
        CHECK(check_no_adjacent_leftout(d).ok);
        CHECK(check_no_many_to_many(d).ok);
    }
}

TEST_CASE("gap bound") {
    const std::string top = "001100111-000-11000";
    const std::string bot = "00--001111000011000";
    const auto x = BlockSequence::from_bits(strip(top));
    const auto y = BlockSequence::from_bits(strip(bot));
    const auto d = decompose(x, y, from_rows(top, bot), 3);
    const double dev = std::max(std::abs(7.0 - 17.0 / 3), std::abs(5.0 - 17.0 / 3));
    const auto gb = q_gap_bound(d, 17, 3, dev);
    CHECK(gb.lhs == doctest::Approx(1.0 / 7));
    CHECK(gb.rhs == doctest::Approx(1.5 * std::abs(d.delta1 - d.delta2) + 4.0 * 3 * dev / 17));
    CHECK(gb.holds());
    CHECK_THROWS_AS(q_gap_bound(d, 17, 3, 0.1), PreconditionViolation);

    const auto s = BlockSequence::from_bits("001100111");
    const auto sym = decompose(s, s, block_by_block_alignment(s, s), 3);
    const auto gs = q_gap_bound(sym, 9, 3, 1.0);
    CHECK(gs.lhs == 0.0);
    CHECK(gs.holds());

    testgen::Gen g(34);
    const double n = 10000;
    for (int r = 0; r < 30; ++r) {
        const auto [a, b] = g.model_pair(6, 10000);
        const auto dd = decompose(a, b, leftmost_optimal_alignment(materialize(a), materialize(b)), 6);
        CHECK(q_gap_bound(dd, 10000, 6, std::pow(n, 0.6)).holds());
    }
}

TEST_CASE("report lists the statistics") {
    const auto x = BlockSequence::from_bits("00110011110000111");
    const auto y = BlockSequence::from_bits("0011100001100001111");
    const auto rep = to_report(decompose(x, y, block_by_block_alignment(x, y), 3));
    for (const char* key : {"p_2_2=", "p_4_4=", "q1=0", "q2=0", "delta1=", "x_blocks=6", "x_one_to_one=6"})
        CHECK(rep.find(key) != std::string::npos);
    CHECK(std::string(to_string(BlockKind::Polygamist)).size() > 0);
}
