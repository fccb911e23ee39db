#include <doctest.h>

#include <cmath>
#include <vector>

#include "blocklcs/bounds.hpp"
#include "blocklcs/errors.hpp"
#include "blocklcs/rng.hpp"

using namespace blocklcs;

TEST_CASE("law of the minimum of two block lengths") {
    // Enumerate the nine equally likely length pairs.
    std::array<double, 3> law{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) law[static_cast<std::size_t>(std::min(a, b))] += 1.0 / 9;
    const auto d = min_block_distribution();
    for (std::size_t k = 0; k < 3; ++k) CHECK(d[k] == doctest::Approx(law[k]));
    CHECK(expected_min_block(3) == doctest::Approx(23.0 / 9));
    CHECK(expected_min_block(6) == doctest::Approx(50.0 / 9));
}

TEST_CASE("Monte Carlo mean of the minimum block length") {
    Rng rng(2024);
    const int draws = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < draws; ++k) {
        const double m = 5.0 + static_cast<double>(std::min(rng.uniform_below(3), rng.uniform_below(3)));
        sum += m;
        sum2 += m * m;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / (draws - 1));
    CHECK(std::abs(mean - 50.0 / 9) <= 3.0 * se);
}

TEST_CASE("gamma lower bound") {
    CHECK(gamma_lower_bound(6) == doctest::Approx(25.0 / 27));
    double prev = 0.0;
    for (int l = 2; l < 200; ++l) {
        CHECK(gamma_lower_bound(l) > prev);
        prev = gamma_lower_bound(l);
    }
    CHECK(gamma_lower_bound(1000000) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("left-out bound") {
    CHECK(leftout_bound(6) == doctest::Approx(4.0 / 45));
    CHECK(leftout_bound(3) == doctest::Approx(2.0 / 9));
    CHECK(leftout_bound(6, 0.95) == doctest::Approx(0.06));
    CHECK(leftout_bound(6, gamma_lower_bound(6)) == doctest::Approx(leftout_bound(6)));
    CHECK_THROWS_AS(leftout_bound(6, 1.0), DomainError);
    CHECK_THROWS_AS(leftout_bound(6, 0.0), DomainError);
}

TEST_CASE("Hoeffding tail") {
    CHECK(hoeffding_tail(100, 0.0, 1.0).value == doctest::Approx(2.0));
    const auto h = hoeffding_tail(10000, 0.05, 1.0);
    CHECK(h.value == doctest::Approx(2.0 * std::exp(-12.5)));
    CHECK(h.value == doctest::Approx(7.45e-6).epsilon(1e-3));
    CHECK(h.log_value == doctest::Approx(std::log(2.0) - 12.5));
    CHECK_THROWS_AS(hoeffding_tail(100, 0.1, 0.0), DomainError);
    CHECK_THROWS_AS(hoeffding_tail(100, -0.1, 1.0), DomainError);
}

TEST_CASE("Azuma tail") {
    const std::vector<double> one{1.0};
    CHECK(azuma_tail(0.0, one).value == doctest::Approx(2.0));
    CHECK(azuma_tail(1.0, one).value == doctest::Approx(2.0 * std::exp(-0.5)));
    const std::size_t n = 500;
    const double c = 0.3;
    const std::vector<double> fours(n, 4.0);
    CHECK(azuma_tail(c * n, fours).value == doctest::Approx(2.0 * std::exp(-c * c * n / 32.0)));
    CHECK_THROWS_AS(azuma_tail(1.0, std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(azuma_tail(1.0, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST_CASE("tail of the block-count event") {
    const auto c = event_C_tail(100000, 6);
    const double b1 = 216.0 / 32;
    CHECK(c.log_value == doctest::Approx(std::log(8.0) - b1 * std::pow(1e5, 0.2)));
    CHECK(c.value < 1e-28);
    CHECK(c.value > 0.0);
    CHECK(event_C_tail(1, 2).value == doctest::Approx(8.0 * std::exp(-0.25)));
}

TEST_CASE("tail of the length-proportion event") {
    const auto d = event_D_tail(100000, 6, 0.05);
    CHECK(d.available);
    CHECK(d.log_value < std::log(1e-100));
    const double n = 100000, delta = 0.05;
    CHECK(d.log_value == doctest::Approx(std::log(2.0) + 0.6 * std::log(n) -
                                         n * (1 + 3 * delta) / 12.0 * std::log(1 + 3 * delta)));
    CHECK(event_D_tail(1000, 6, 1e-12).value == doctest::Approx(2.0 * std::pow(1000.0, 0.6)).epsilon(1e-6));
    CHECK_THROWS_AS(event_D_tail(1000, 6, 0.0), DomainError);
}

TEST_CASE("tail of the block-count ratio event is unavailable") {
    const auto g = event_G_tail(100000, 6, 0.05);
    CHECK_FALSE(g.available);
    CHECK(std::isnan(g.value));
}

TEST_CASE("tail difference bound") {
    const auto t = tail_difference_bound(1e6, 0.1, 0.9);
    CHECK(t.c_star == doctest::Approx(0.0225));
    CHECK(t.theta == doctest::Approx(6.328125e-5));
    CHECK(t.tail.log_value == doctest::Approx(std::log(2.0) - 63.28125));
    CHECK(tail_difference_bound(1e6, 1e-9, 0.9).c_star < 1e-9);
    CHECK_THROWS_AS(tail_difference_bound(1e6, 0.0, 0.9), DomainError);
    CHECK_THROWS_AS(tail_difference_bound(1e6, 0.1, 1.5), DomainError);
}

TEST_CASE("all bounds") {
    const auto all = all_bounds(100000, 6, 0.05, std::nullopt);
    CHECK(all.size() >= 8);
    bool has_c = false;
    for (const auto& b : all) {
        CHECK_FALSE(b.name.empty());
        CHECK_FALSE(b.formula.empty());
        has_c = has_c || b.name == "event_C_tail";
    }
    CHECK(has_c);
}
