#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace blocklcs {

struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased; 0 when count < 2
    double stderr_mean = 0.0;
};

/// Two-pass mean and unbiased variance.
Summary summarize(std::span<const double> values);

double sample_variance(std::span<const double> values);

/// Linear interpolation between order statistics, q in [0, 1].
double quantile(std::vector<double> values, double q);

struct LinearFit {
    double slope;
    double intercept;
};

/// Ordinary least squares of y on x; needs two distinct x values.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct ConfidenceInterval {
    double lo;
    double hi;
};

/// Percentile bootstrap interval of `statistic` over `resamples` resamples of
/// `values` drawn with replacement, at the given two-sided level.
ConfidenceInterval bootstrap_ci(std::span<const double> values,
                                const std::function<double(std::span<const double>)>& statistic,
                                std::size_t resamples, double level, std::uint64_t seed);

}  // namespace blocklcs
