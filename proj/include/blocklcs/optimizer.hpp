#pragma once

// Constrained minimization of the bias bound
//
//   f(q, p) = R_short(p) (1 - 9q) - R_long(p) (1 - 3q) - 3q
//   R_short = (p_{l-1,l} + p_{l-1,l+1}) / row_{l-1},  R_long = p_{l+1,l+1} / row_{l+1}
//
// over q in [0, q0] and 3x3 simplex matrices p with
//   row_{l-1}, row_{l+1} >= (1/3 - q0) / 2
//   2 H(q) + (1 - 4q) (ln(1/9) + H(p)) >= 0,
// where H(p) = sum p ln(1/p) lies in [0, ln 9], so ln(1/9) + H(p) <= 0 with
// equality only at the uniform matrix.

#include <cstddef>
#include <optional>
#include <string>

#include "blocklcs/pair_matrix.hpp"

namespace blocklcs {

struct FeasiblePoint {
    double q = 0.0;
    PairMatrix p{};
};

struct GeneralizedPoint {
    double q1 = 0.0;
    double q2 = 0.0;
    double delta = 0.0;
    PairMatrix p{};
};

/// q ln(1/q) + (1-q) ln(1/(1-q)); DomainError outside [0, 1].
double binary_entropy(double q);

/// sum p_ij ln(1/p_ij) with 0 ln(1/0) = 0.
double matrix_entropy(const PairMatrix& p);

/// The uniform matrix (every entry 1/9).
PairMatrix uniform_matrix();

/// f(q, p) as displayed above. UndefinedValue when row_{l-1} or row_{l+1} is 0.
double objective(const FeasiblePoint& fp);

/// 2 H(q) + (1 - 4q)(ln(1/9) + H(p)); the point is entropy-feasible iff >= 0.
double entropy_condition(const FeasiblePoint& fp);

/// Slack of every constraint (feasible iff all are >= 0).
struct ConstraintSlacks {
    double q_lower;   ///< q
    double q_upper;   ///< q0 - q
    double row_short; ///< row_{l-1} - (1/3 - q0)/2
    double row_long;  ///< row_{l+1} - (1/3 - q0)/2
    double min_entry; ///< min p_ij
    double sum_error; ///< -|sum p - 1|
    double entropy;   ///< entropy_condition

    double min() const noexcept;
};

ConstraintSlacks constraint_slacks(const FeasiblePoint& fp, double q0);

/// (4/9)/(l-1), the left-out proportion bound at which the model is studied.
double default_q0(int l);

enum class OptimizationStatus {
    Certified,   ///< the grid oracle found feasible points; minimum <= grid minimum
    RefinedOnly, ///< no grid point is feasible; minimum comes from refinement alone
    Infeasible   ///< neither the grid nor the refinement found a feasible point
};

const char* to_string(OptimizationStatus s) noexcept;

struct MinimizeOptions {
    double grid_step = 0.02;
    bool refine = true;
    double feasibility_tol = 1e-9;
    std::size_t starts = 8;             ///< refinement starts besides the uniform point
    std::size_t max_evaluations = 40000; ///< per start
    unsigned jobs = 1;
};

struct OptimizationResult {
    int l = 0;
    double q0 = 0.0;
    double grid_step = 0.0;
    OptimizationStatus status = OptimizationStatus::Infeasible;
    double minimum = 0.0;
    FeasiblePoint argmin{};
    ConstraintSlacks slacks{};
    std::optional<double> oracle_minimum;  ///< grid minimum over feasible lattice points
    std::optional<FeasiblePoint> oracle_argmin;
    std::optional<double> refined_minimum;
    double oracle_gap = 0.0;               ///< |oracle_minimum - minimum| (0 without oracle)
    std::size_t lattice_points = 0;        ///< p compositions visited
    std::size_t feasible_lattice_points = 0;
};

/// Grid oracle plus optional Nelder-Mead refinement. The objective decreases
/// and the entropy slack increases in q on [0, 1/2), so for every p the
/// lattice only needs q = q0; the lattice is p in (grid_step Z)^9 on the
/// simplex, enumerated exactly in integer compositions. InvalidParameter when
/// q0 is outside [0, 1/3) or grid_step outside (0, 0.1] or 1/grid_step is not
/// an integer.
OptimizationResult minimize(int l, double q0, const MinimizeOptions& options = {});

/// H(q1) + H(q2) + (1 - max{q1 + 3q2, 3q1 + q2}) (ln(1/9) + H(p)).
double generalized_lhs(const GeneralizedPoint& gp);

/// R_short (1 - 3q1/(1/3 - d0)) - (1 - (q1 + d0)/(1/3 + d0)) R_long
///   - q2 (1 + d0)/(1/3 - d0),  d0 = delta0.
/// At q1 = q2 = q and d0 = 0 this is exactly objective(q, p).
double generalized_objective(const GeneralizedPoint& gp, double delta0);

/// Same expression with the long-block factor typeset as
/// 1 - (d0 + 2(q1 - d0))/(1/3 + d0); it does not reduce to objective.
double generalized_objective_printed(const GeneralizedPoint& gp, double delta0);

}  // namespace blocklcs
