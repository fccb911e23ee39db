#include "blocklcs/bounds.hpp"

#include <cmath>
#include <limits>

#include "blocklcs/errors.hpp"

namespace blocklcs {

namespace {

void require_l(int l) {
    if (l < 2) throw DomainError("l must be >= 2");
}

BoundValue from_log(std::string name, std::map<std::string, double> params, double log_value, std::string formula) {
    BoundValue b;
    b.name = std::move(name);
    b.parameters = std::move(params);
    b.log_value = log_value;
    b.value = std::exp(log_value);
    b.formula = std::move(formula);
    return b;
}

}  // namespace

std::array<double, 3> min_block_distribution() { return {5.0 / 9.0, 3.0 / 9.0, 1.0 / 9.0}; }

double expected_min_block(int l) {
    require_l(l);
    const auto d = min_block_distribution();
    return d[0] * (l - 1) + d[1] * l + d[2] * (l + 1);
}

double gamma_lower_bound(int l) {
    require_l(l);
    return 1.0 - 4.0 / (9.0 * l);
}

double leftout_bound(int l, std::optional<double> gamma) {
    require_l(l);
    if (!gamma) return (4.0 / 9.0) / (l - 1);
    if (!(*gamma > 0.0 && *gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
    return (1.0 - *gamma) / (1.0 - 1.0 / l);
}

BoundValue hoeffding_tail(double n, double deviation, double a) {
    if (!(a > 0.0)) throw DomainError("Hoeffding bound needs a > 0");
    if (!(deviation >= 0.0)) throw DomainError("Hoeffding bound needs Delta >= 0");
    if (!(n >= 1.0)) throw DomainError("Hoeffding bound needs n >= 1");
    return from_log("hoeffding", {{"n", n}, {"Delta", deviation}, {"a", a}},
                    std::log(2.0) - deviation * deviation / (2.0 * a * a) * n, "2 exp(-Delta^2 n / (2 a^2))");
}

BoundValue azuma_tail(double v, std::span<const double> increments) {
    if (increments.empty()) throw DomainError("Azuma bound needs at least one increment");
    double sum = 0.0;
    for (double a : increments) {
        if (!(a > 0.0)) throw DomainError("Azuma increments must be positive");
        sum += a * a;
    }
    return from_log("azuma", {{"v", v}, {"terms", static_cast<double>(increments.size())}, {"sum_a2", sum}},
                    std::log(2.0) - 0.5 * v * v / sum, "2 exp(-v^2 / (2 sum a_i^2))");
}

BoundValue event_C_tail(double n, int l) {
    require_l(l);
    if (!(n >= 1.0)) throw DomainError("n must be >= 1");
    const double b1 = std::pow(l, 3) / 32.0;
    return from_log("event_C_tail", {{"n", n}, {"l", l}, {"b1", b1}}, std::log(8.0) - b1 * std::pow(n, 0.2),
                    "8 exp(-b1 n^0.2), b1 = l^3/32");
}

BoundValue event_D_tail(double n, int l, double delta) {
    require_l(l);
    if (!(delta > 0.0)) throw DomainError("event D tail needs delta > 0");
    if (!(n >= 1.0)) throw DomainError("n must be >= 1");
    const double k = 1.0 + 3.0 * delta;
    const double log_value = std::log(2.0) + 0.6 * std::log(n) - n * k / (2.0 * l) * std::log(k);
    return from_log("event_D_tail", {{"n", n}, {"l", l}, {"delta", delta}}, log_value,
                    "2 n^0.6 (1/(1+3 delta))^(n (1+3 delta)/(2l))");
}

BoundValue event_G_tail(double n, int l, double delta) {
    require_l(l);
    BoundValue b;
    b.name = "event_G_tail";
    b.parameters = {{"n", n}, {"l", l}, {"delta", delta}};
    b.value = std::numeric_limits<double>::quiet_NaN();
    b.log_value = std::numeric_limits<double>::quiet_NaN();
    b.formula = "2 exp(-b4 n^0.2) + 2 exp(-b5 n^0.2), b4 and b5 unspecified";
    b.available = false;
    return b;
}

TailDifference tail_difference_bound(double n, double delta, double gamma0) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    if (!(gamma0 > 0.0 && gamma0 <= 1.0)) throw DomainError("gamma0 must lie in (0, 1]");
    if (!(n >= 1.0)) throw DomainError("n must be >= 1");
    TailDifference t{};
    t.c_star = delta * gamma0 / 4.0;
    t.theta = t.c_star * t.c_star / 8.0;
    t.tail = from_log("tail_difference", {{"n", n}, {"delta", delta}, {"gamma0", gamma0}},
                      std::log(2.0) - t.theta * n, "2 exp(-theta n), theta = c*^2/8, c* = delta gamma0 / 4");
    return t;
}

namespace {

BoundValue plain(std::string name, std::map<std::string, double> params, double value, std::string formula) {
    BoundValue b;
    b.name = std::move(name);
    b.parameters = std::move(params);
    b.value = value;
    b.log_value = value > 0.0 ? std::log(value) : -std::numeric_limits<double>::infinity();
    b.formula = std::move(formula);
    return b;
}

}  // namespace

std::vector<BoundValue> all_bounds(double n, int l, double delta, std::optional<double> gamma) {
    std::vector<BoundValue> out;
    out.push_back(plain("expected_min_block", {{"l", l}}, expected_min_block(l), "l - 4/9"));
    out.push_back(plain("gamma_lower_bound", {{"l", l}}, gamma_lower_bound(l), "1 - 4/(9l)"));
    out.push_back(plain("leftout_bound", {{"l", l}}, leftout_bound(l), "(4/9)/(l-1)"));
    if (gamma)
        out.push_back(plain("leftout_bound_gamma", {{"l", l}, {"gamma", *gamma}}, leftout_bound(l, gamma),
                            "(1-gamma)/(1-1/l)"));
    out.push_back(hoeffding_tail(n, delta, 1.0));
    out.push_back(event_C_tail(n, l));
    out.push_back(event_D_tail(n, l, delta));
    out.push_back(event_G_tail(n, l, delta));
    const TailDifference td = tail_difference_bound(n, delta, gamma.value_or(gamma_lower_bound(l)));
    out.push_back(plain("c_star", {{"delta", delta}}, td.c_star, "delta gamma0 / 4"));
    out.push_back(plain("theta", {{"delta", delta}}, td.theta, "c*^2 / 8"));
    out.push_back(td.tail);
    return out;
}

}  // namespace blocklcs
