#include "blocklcs/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "blocklcs/errors.hpp"
#include "blocklcs/parallel.hpp"

namespace blocklcs {

namespace {

const double kLn9 = std::log(9.0);

double xlogx_inv(double v) { return v > 0.0 ? -v * std::log(v) : 0.0; }

double row_sum(const PairMatrix& p, std::size_t r) { return p[r][0] + p[r][1] + p[r][2]; }

double short_ratio(const PairMatrix& p) {
    const double row = row_sum(p, kShort);
    if (row <= 0.0) throw UndefinedValue("row of (l-1)-blocks sums to zero");
    return (p[kShort][kMid] + p[kShort][kLong]) / row;
}

double long_ratio(const PairMatrix& p) {
    const double row = row_sum(p, kLong);
    if (row <= 0.0) throw UndefinedValue("row of (l+1)-blocks sums to zero");
    return p[kLong][kLong] / row;
}

}  // namespace

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binary entropy needs q in [0, 1]");
    return xlogx_inv(q) + xlogx_inv(1.0 - q);
}

double matrix_entropy(const PairMatrix& p) {
    double h = 0.0;
    for (const auto& row : p)
        for (double v : row) h += xlogx_inv(v);
    return h;
}

PairMatrix uniform_matrix() {
    PairMatrix p;
    for (auto& row : p) row.fill(1.0 / 9.0);
    return p;
}

double objective(const FeasiblePoint& fp) {
    const double q = fp.q;
    return short_ratio(fp.p) * (1.0 - 9.0 * q) - long_ratio(fp.p) * (1.0 - 3.0 * q) - 3.0 * q;
}

double entropy_condition(const FeasiblePoint& fp) {
    return 2.0 * binary_entropy(fp.q) + (1.0 - 4.0 * fp.q) * (-kLn9 + matrix_entropy(fp.p));
}

double ConstraintSlacks::min() const noexcept {
    return std::min({q_lower, q_upper, row_short, row_long, min_entry, sum_error, entropy});
}

ConstraintSlacks constraint_slacks(const FeasiblePoint& fp, double q0) {
    const double row_floor = (1.0 / 3.0 - q0) / 2.0;
    ConstraintSlacks s{};
    s.q_lower = fp.q;
    s.q_upper = q0 - fp.q;
    s.row_short = row_sum(fp.p, kShort) - row_floor;
    s.row_long = row_sum(fp.p, kLong) - row_floor;
    double total = 0.0;
    s.min_entry = std::numeric_limits<double>::infinity();
    for (const auto& row : fp.p)
        for (double v : row) {
            total += v;
            s.min_entry = std::min(s.min_entry, v);
        }
    s.sum_error = -std::abs(total - 1.0);
    s.entropy = (fp.q >= 0.0 && fp.q <= 1.0) ? entropy_condition(fp) : -std::numeric_limits<double>::infinity();
    return s;
}

double default_q0(int l) {
    if (l < 2) throw InvalidParameter("l must be >= 2");
    return (4.0 / 9.0) / (l - 1);
}

const char* to_string(OptimizationStatus s) noexcept {
    switch (s) {
        case OptimizationStatus::Certified: return "certified";
        case OptimizationStatus::RefinedOnly: return "refined-only";
        case OptimizationStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    std::array<int, 9> counts{};
};

// Keeps the k best candidates, ties resolved by enumeration order.
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) {}
    double worst() const {
        return items_.size() < k_ ? std::numeric_limits<double>::infinity() : items_.back().value;
    }
    void offer(double value, const std::array<int, 9>& counts) {
        if (value >= worst()) return;
        auto pos = std::upper_bound(items_.begin(), items_.end(), value,
                                    [](double v, const Candidate& c) { return v < c.value; });
        items_.insert(pos, Candidate{value, counts});
        if (items_.size() > k_) items_.pop_back();
    }
    const std::vector<Candidate>& items() const { return items_; }

private:
    std::size_t k_;
    std::vector<Candidate> items_;
};

struct GridPartition {
    TopK best;
    std::size_t lattice = 0;
    std::size_t feasible = 0;
};

// Cell order: row l (cells 3..5), row l-1 (0..2), row l+1 (6..8). Row l does
// not enter the objective, so the inner loops only update row-dependent terms.
// Partition index = count in cell 3.
void enumerate_partition(int c3, int D, double q0, double tol, GridPartition& out) {
    std::vector<double> klnk(static_cast<std::size_t>(D) + 1, 0.0);
    for (int k = 2; k <= D; ++k) klnk[static_cast<std::size_t>(k)] = k * std::log(static_cast<double>(k));
    auto T = [&](int k) { return klnk[static_cast<std::size_t>(k)]; };

    // H(p) = ln D - (1/D) sum k ln k. Feasible iff sum k ln k <= budget.
    const double hq = 2.0 * binary_entropy(q0);
    const double w = 1.0 - 4.0 * q0;
    const double lnD = std::log(static_cast<double>(D));
    // 2H(q) + w(-ln9 + lnD - S/D) >= -tol  <=>  S <= D (lnD - ln9 + (hq + tol)/w)
    // With w <= 0 the condition holds for every p.
    const double budget = w > 0.0 ? static_cast<double>(D) * (lnD - kLn9 + (hq + tol) / w)
                                  : std::numeric_limits<double>::infinity();
    const double row_floor = (1.0 / 3.0 - q0) / 2.0 * D;
    const double a = 1.0 - 9.0 * q0;
    const double b = 1.0 - 3.0 * q0;
    const double c = 3.0 * q0;
    const double slack_eps = 1e-9 * D;

    std::array<int, 9> k{};
    k[3] = c3;
    int rem3 = D - c3;
    double s3 = T(c3);
    for (k[4] = 0; k[4] <= rem3; ++k[4]) {
        const int rem4 = rem3 - k[4];
        const double s4 = s3 + T(k[4]);
        for (k[5] = 0; k[5] <= rem4; ++k[5]) {
            const int rem5 = rem4 - k[5];
            const double s5 = s4 + T(k[5]);
            for (k[0] = 0; k[0] <= rem5; ++k[0]) {
                const int rem0 = rem5 - k[0];
                const double s0 = s5 + T(k[0]);
                for (k[1] = 0; k[1] <= rem0; ++k[1]) {
                    const int rem1 = rem0 - k[1];
                    const double s1 = s0 + T(k[1]);
                    for (k[2] = 0; k[2] <= rem1; ++k[2]) {
                        const int rem2 = rem1 - k[2];
                        const int row_short = k[0] + k[1] + k[2];
                        out.lattice += static_cast<std::size_t>(rem2 + 1) * static_cast<std::size_t>(rem2 + 2) / 2;
                        if (row_short < row_floor - slack_eps || row_short == 0) continue;
                        const double s2 = s1 + T(k[2]);
                        const double rs = static_cast<double>(k[1] + k[2]) / row_short;
                        const int row_long = rem2;
                        if (row_long < row_floor - slack_eps || row_long == 0) continue;
                        for (k[6] = 0; k[6] <= rem2; ++k[6]) {
                            const int rem6 = rem2 - k[6];
                            const double s6 = s2 + T(k[6]);
                            for (k[7] = 0; k[7] <= rem6; ++k[7]) {
                                k[8] = rem6 - k[7];
                                const double s = s6 + T(k[7]) + T(k[8]);
                                if (s > budget) continue;
                                ++out.feasible;
                                const double v = rs * a - (static_cast<double>(k[8]) / row_long) * b - c;
                                out.best.offer(v, k);
                            }
                        }
                    }
                }
            }
        }
    }
}

FeasiblePoint point_from_counts(const std::array<int, 9>& counts, int D, double q) {
    FeasiblePoint fp;
    fp.q = q;
    for (std::size_t i = 0; i < 9; ++i) fp.p[i / 3][i % 3] = static_cast<double>(counts[i]) / D;
    return fp;
}

// Chart of the open simplex: 8 logits, the ninth fixed at 0.
using Chart = std::array<double, 8>;

PairMatrix chart_to_matrix(const Chart& z) {
    std::array<double, 9> e{};
    double mx = 0.0;
    for (double v : z) mx = std::max(mx, v);
    double total = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        e[i] = std::exp((i < 8 ? z[i] : 0.0) - mx);
        total += e[i];
    }
    PairMatrix p;
    for (std::size_t i = 0; i < 9; ++i) p[i / 3][i % 3] = e[i] / total;
    return p;
}

Chart matrix_to_chart(const PairMatrix& p) {
    constexpr double kFloor = 1e-6;
    const double last = std::log(p[2][2] + kFloor);
    Chart z{};
    for (std::size_t i = 0; i < 8; ++i) z[i] = std::log(p[i / 3][i % 3] + kFloor) - last;
    return z;
}

struct RefineOutcome {
    bool found = false;
    FeasiblePoint best{};
    double value = std::numeric_limits<double>::infinity();
};

// Nelder-Mead on the chart at q = q0 with a penalty for violated constraints.
// The answer is the best exactly feasible point ever evaluated.
RefineOutcome nelder_mead(const Chart& start, double q0, double tol, std::size_t max_evaluations) {
    constexpr std::size_t N = 8;
    constexpr double kPenalty = 100.0;
    RefineOutcome out;
    auto evaluate = [&](const Chart& z) {
        FeasiblePoint fp{q0, chart_to_matrix(z)};
        const ConstraintSlacks s = constraint_slacks(fp, q0);
        const double f = objective(fp);
        const double violation = std::max(0.0, -s.entropy) + std::max(0.0, -s.row_short) + std::max(0.0, -s.row_long);
        if (s.min() >= -tol && f < out.value) {
            out.found = true;
            out.value = f;
            out.best = fp;
        }
        return f + kPenalty * violation;
    };

    std::array<Chart, N + 1> simplex{};
    std::array<double, N + 1> values{};
    std::size_t evaluations = 0;
    auto build = [&](const Chart& base, double step) {
        simplex[0] = base;
        for (std::size_t i = 0; i < N; ++i) {
            simplex[i + 1] = base;
            simplex[i + 1][i] += step;
        }
        for (std::size_t i = 0; i <= N; ++i) values[i] = evaluate(simplex[i]);
        evaluations += N + 1;
    };

    Chart base = start;
    for (double step : {1.0, 0.25, 0.05}) {
        build(base, step);
        while (evaluations < max_evaluations) {
            std::array<std::size_t, N + 1> order{};
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            const std::size_t best = order.front(), worst = order.back(), second = order[N - 1];
            if (values[worst] - values[best] < 1e-12) break;
            Chart centroid{};
            for (std::size_t i = 0; i <= N; ++i) {
                if (i == worst) continue;
                for (std::size_t d = 0; d < N; ++d) centroid[d] += simplex[i][d] / N;
            }
            auto along = [&](double t) {
                Chart z;
                for (std::size_t d = 0; d < N; ++d) z[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
                return z;
            };
            const Chart reflected = along(-1.0);
            const double fr = evaluate(reflected);
            ++evaluations;
            if (fr < values[best]) {
                const Chart expanded = along(-2.0);
                const double fe = evaluate(expanded);
                ++evaluations;
                if (fe < fr) {
                    simplex[worst] = expanded;
                    values[worst] = fe;
                } else {
                    simplex[worst] = reflected;
                    values[worst] = fr;
                }
            } else if (fr < values[second]) {
                simplex[worst] = reflected;
                values[worst] = fr;
            } else {
                const bool outside = fr < values[worst];
                const Chart contracted = along(outside ? -0.5 : 0.5);
                const double fc = evaluate(contracted);
                ++evaluations;
                if (fc < (outside ? fr : values[worst])) {
                    simplex[worst] = contracted;
                    values[worst] = fc;
                } else {
                    for (std::size_t i = 0; i <= N; ++i) {
                        if (i == best) continue;
                        for (std::size_t d = 0; d < N; ++d)
                            simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
                        values[i] = evaluate(simplex[i]);
                    }
                    evaluations += N;
                }
            }
        }
        base = simplex[static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin())];
    }
    return out;
}

}  // namespace

OptimizationResult minimize(int l, double q0, const MinimizeOptions& options) {
    if (l < 2) throw InvalidParameter("l must be >= 2");
    if (!(q0 >= 0.0 && q0 < 1.0 / 3.0)) throw InvalidParameter("q0 must lie in [0, 1/3)");
    if (!(options.grid_step > 0.0 && options.grid_step <= 0.1))
        throw InvalidParameter("grid step must lie in (0, 0.1]");
    const double inv = 1.0 / options.grid_step;
    const int D = static_cast<int>(std::lround(inv));
    if (std::abs(inv - D) > 1e-9 * inv) throw InvalidParameter("1/grid_step must be an integer");

    OptimizationResult r;
    r.l = l;
    r.q0 = q0;
    r.grid_step = options.grid_step;

    const std::size_t keep = std::max<std::size_t>(1, options.starts);
    std::vector<GridPartition> parts(static_cast<std::size_t>(D) + 1, GridPartition{TopK(keep)});
    parallel_for(parts.size(), options.jobs, [&](std::size_t c3) {
        enumerate_partition(static_cast<int>(c3), D, q0, options.feasibility_tol, parts[c3]);
    });
    TopK best(keep);
    for (const auto& part : parts) {
        r.lattice_points += part.lattice;
        r.feasible_lattice_points += part.feasible;
        for (const auto& c : part.best.items()) best.offer(c.value, c.counts);
    }

    if (!best.items().empty()) {
        const FeasiblePoint fp = point_from_counts(best.items().front().counts, D, q0);
        r.oracle_argmin = fp;
        r.oracle_minimum = objective(fp);
        r.minimum = *r.oracle_minimum;
        r.argmin = fp;
        r.status = OptimizationStatus::Certified;
    }

    if (options.refine) {
        std::vector<Chart> starts{matrix_to_chart(uniform_matrix())};
        for (const auto& c : best.items()) starts.push_back(matrix_to_chart(point_from_counts(c.counts, D, q0).p));
        std::vector<RefineOutcome> outcomes(starts.size());
        parallel_for(starts.size(), options.jobs, [&](std::size_t i) {
            outcomes[i] = nelder_mead(starts[i], q0, options.feasibility_tol, options.max_evaluations);
        });
        // The uniform matrix itself is feasible for every q0 in [0, 1/3).
        RefineOutcome uniform;
        FeasiblePoint u{q0, uniform_matrix()};
        if (constraint_slacks(u, q0).min() >= -options.feasibility_tol) {
            uniform.found = true;
            uniform.best = u;
            uniform.value = objective(u);
        }
        outcomes.insert(outcomes.begin(), uniform);
        for (const auto& o : outcomes) {
            if (!o.found) continue;
            if (!r.refined_minimum || o.value < *r.refined_minimum) r.refined_minimum = o.value;
            if (r.status == OptimizationStatus::Infeasible || o.value < r.minimum) {
                if (r.status == OptimizationStatus::Infeasible) r.status = OptimizationStatus::RefinedOnly;
                r.minimum = o.value;
                r.argmin = o.best;
            }
        }
    }

    if (r.status != OptimizationStatus::Infeasible) r.slacks = constraint_slacks(r.argmin, q0);
    if (r.oracle_minimum) r.oracle_gap = std::abs(*r.oracle_minimum - r.minimum);
    return r;
}

double generalized_lhs(const GeneralizedPoint& gp) {
    const double worst = std::max(gp.q1 + 3.0 * gp.q2, 3.0 * gp.q1 + gp.q2);
    return binary_entropy(gp.q1) + binary_entropy(gp.q2) + (1.0 - worst) * (-kLn9 + matrix_entropy(gp.p));
}

namespace {

double generalized_with_long_factor(const GeneralizedPoint& gp, double delta0, double long_numerator) {
    if (!(delta0 >= 0.0 && delta0 < 1.0 / 3.0)) throw UndefinedValue("delta0 must lie in [0, 1/3)");
    const double lo = 1.0 / 3.0 - delta0;
    const double hi = 1.0 / 3.0 + delta0;
    return short_ratio(gp.p) * (1.0 - 3.0 * gp.q1 / lo) - (1.0 - long_numerator / hi) * long_ratio(gp.p) -
           gp.q2 * (1.0 + delta0) / lo;
}

}  // namespace

double generalized_objective(const GeneralizedPoint& gp, double delta0) {
    return generalized_with_long_factor(gp, delta0, gp.q1 + delta0);
}

double generalized_objective_printed(const GeneralizedPoint& gp, double delta0) {
    return generalized_with_long_factor(gp, delta0, delta0 + 2.0 * (gp.q1 - delta0));
}

}  // namespace blocklcs
