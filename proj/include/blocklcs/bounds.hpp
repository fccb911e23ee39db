#pragma once

// Closed-form bounds of the block model: expected minimum block length, the
// gamma_l lower bound, left-out proportion bounds and tail probabilities of
// the high-probability events. Values that would underflow are also carried
// in log form.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blocklcs {

struct BoundValue {
    std::string name;
    std::map<std::string, double> parameters;
    double value = 0.0;      ///< 0 when the true value is below the double range
    double log_value = 0.0;  ///< natural log of the value (-inf for 0)
    std::string formula;
    bool available = true;   ///< false when the bound needs an unknown constant
};

/// Law of min(B_X, B_Y): P(l-1) = 5/9, P(l) = 3/9, P(l+1) = 1/9.
std::array<double, 3> min_block_distribution();

/// E[min(B_X, B_Y)] = l - 4/9.
double expected_min_block(int l);

/// 1 - 4/(9l).
double gamma_lower_bound(int l);

/// (1 - gamma)/(1 - 1/l) when gamma is given, (4/9)/(l - 1) otherwise.
/// DomainError when gamma lies outside (0, 1).
double leftout_bound(int l, std::optional<double> gamma = std::nullopt);

/// 2 exp(-Delta^2 n / (2 a^2)). DomainError when a <= 0, Delta < 0 or n < 1.
BoundValue hoeffding_tail(double n, double deviation, double a);

/// 2 exp(-v^2 / (2 sum a_i^2)). DomainError on empty or nonpositive increments.
BoundValue azuma_tail(double v, std::span<const double> increments);

/// 8 exp(-(l^3/32) n^0.2).
BoundValue event_C_tail(double n, int l);

/// 2 n^0.6 (1/(1 + 3 delta))^(n (1 + 3 delta)/(2l)). DomainError when delta <= 0.
BoundValue event_D_tail(double n, int l, double delta);

/// The tail of G^n needs constants that are not given; reported unavailable.
BoundValue event_G_tail(double n, int l, double delta);

struct TailDifference {
    double c_star;  ///< delta gamma0 / 4
    double theta;   ///< c_star^2 / 8
    BoundValue tail;  ///< 2 exp(-theta n)
};

/// DomainError unless delta in (0, 1) and gamma0 in (0, 1].
TailDifference tail_difference_bound(double n, double delta, double gamma0);

/// Every bound for the given parameters, in a fixed order.
std::vector<BoundValue> all_bounds(double n, int l, double delta, std::optional<double> gamma);

}  // namespace blocklcs
