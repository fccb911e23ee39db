#include "blocklcs/stats.hpp"

#include <algorithm>
#include <cmath>

#include "blocklcs/errors.hpp"
#include "blocklcs/rng.hpp"

namespace blocklcs {

Summary summarize(std::span<const double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.variance = ss / static_cast<double>(values.size() - 1);
        s.stderr_mean = std::sqrt(s.variance / static_cast<double>(values.size()));
    }
    return s;
}

double sample_variance(std::span<const double> values) { return summarize(values).variance; }

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidParameter("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameter("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("least squares needs two or more (x, y) points");
    const Summary sx = summarize(x);
    const Summary sy = summarize(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - sx.mean) * (y[i] - sy.mean);
        sxx += (x[i] - sx.mean) * (x[i] - sx.mean);
    }
    if (sxx == 0.0) throw DegenerateInput("least squares needs two distinct x values");
    const double slope = sxy / sxx;
    return {slope, sy.mean - slope * sx.mean};
}

ConfidenceInterval bootstrap_ci(std::span<const double> values,
                                const std::function<double(std::span<const double>)>& statistic,
                                std::size_t resamples, double level, std::uint64_t seed) {
    if (values.empty() || resamples == 0) throw InvalidParameter("bootstrap needs data and resamples");
    if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("confidence level must lie in (0, 1)");
    Rng rng(seed);
    std::vector<double> draw(values.size());
    std::vector<double> stats(resamples);
    for (auto& s : stats) {
        for (auto& d : draw) d = values[rng.uniform_below(values.size())];
        s = statistic(draw);
    }
    const double tail = (1.0 - level) / 2.0;
    return {quantile(stats, tail), quantile(stats, 1.0 - tail)};
}

}  // namespace blocklcs
