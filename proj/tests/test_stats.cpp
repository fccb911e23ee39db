#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "blocklcs/errors.hpp"
#include "blocklcs/parallel.hpp"
#include "blocklcs/stats.hpp"
#include "support/generators.hpp"

using namespace blocklcs;

TEST_CASE("summary statistics") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto s = summarize(v);
    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.variance == doctest::Approx(5.0 / 3));
    CHECK(s.stderr_mean == doctest::Approx(std::sqrt(5.0 / 3 / 4)));
    CHECK(sample_variance(std::vector<double>(10, 7.0)) == 0.0);
    CHECK(summarize(std::vector<double>{3.0}).variance == 0.0);
}

TEST_CASE("quantiles interpolate between order statistics") {
    const std::vector<double> v{4, 1, 3, 2};
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 4.0);
    CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
    CHECK(quantile(v, 1.0 / 3) == doctest::Approx(2.0));
}

TEST_CASE("least squares recovers a line") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 * t - 1.0);
    const auto f = least_squares(x, y);
    CHECK(f.slope == doctest::Approx(3.0));
    CHECK(f.intercept == doctest::Approx(-1.0));
    CHECK_THROWS_AS(least_squares(std::vector<double>{2, 2}, std::vector<double>{1, 3}), DegenerateInput);
}

TEST_CASE("bootstrap interval covers the statistic and is deterministic") {
    testgen::Gen g(61);
    std::vector<double> v;
    for (int k = 0; k < 200; ++k) v.push_back(g.real(0.0, 1.0));
    auto mean = [](std::span<const double> s) { return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size()); };
    const auto ci = bootstrap_ci(v, mean, 1000, 0.95, 9);
    const double m = mean(v);
    CHECK(ci.lo <= m);
    CHECK(m <= ci.hi);
    CHECK(ci.hi - ci.lo == doctest::Approx(2 * 1.96 * std::sqrt(1.0 / 12 / 200)).epsilon(0.25));
    const auto again = bootstrap_ci(v, mean, 1000, 0.95, 9);
    CHECK(again.lo == ci.lo);
    CHECK(again.hi == ci.hi);
}

TEST_CASE("parallel_for visits every index once and rethrows the first failure") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_WITH(parallel_for(100, 3,
                                   [](std::size_t i) {
                                       if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
                                   }),
                      "17");
    CHECK(resolve_jobs(3) == 3);
    CHECK(resolve_jobs(0) >= 1);
}
