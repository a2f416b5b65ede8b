/**
 * @file lp.hpp
 * @brief Dense bounded-variable revised simplex.
 *
 * Problems are stated as
 *
 *     min c'x  s.t.  a_i x (>=|<=|=) b_i,  lo <= x <= hi.
 *
 * Internally every row i gets a logical variable s_i = a_i x - b_i whose
 * bounds encode the sense ([0,inf) for >=, (-inf,0] for <=, [0,0] for =).
 * Variable ids are therefore 0..n-1 for structurals and n..n+m-1 for the
 * logicals of rows 0..m-1.
 */
#pragma once

#include "vpcforge/common.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vpcforge {

enum class Sense : std::uint8_t { Ge, Le, Eq };

struct SparseRow {
  std::vector<int> index;
  std::vector<double> value;
  Sense sense = Sense::Ge;
  double rhs = 0.0;

  double dot(std::span<const double> x) const;
  double dot(const Vector& x) const;
  void push(int j, double v) {
    index.push_back(j);
    value.push_back(v);
  }
  std::size_t size() const { return index.size(); }
};

struct VarBound {
  double lo = 0.0;
  double hi = kInf;
};

struct LpProblem {
  std::vector<double> objective;
  std::vector<SparseRow> rows;
  std::vector<VarBound> bounds;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  /// Throws InvalidArgument on inconsistent sizes, lo > hi or non-finite data.
  void validate() const;

  /// Row activities minus rhs for the given point.
  std::vector<double> row_slacks(const Vector& x) const;
  /// Largest violation of rows and bounds at x (0 when feasible).
  double max_violation(const Vector& x) const;
};

enum class LpStatus : std::uint8_t { Optimal, Infeasible, Unbounded };
const char* to_string(LpStatus s);

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, Free };

struct Basis {
  std::vector<int> basic;      ///< basic variable id for each row position
  std::vector<VarState> state; ///< state of all n+m variables
  bool empty() const { return state.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x;                         ///< structural values
  std::vector<double> slacks;       ///< logical values a_i x - b_i
  double obj = 0.0;
  Basis basis;
  std::vector<double> duals;         ///< row multipliers y (>= 0 on >= rows at optimality)
  std::vector<double> reduced_costs; ///< c_j - y a_j for structurals
  int iterations = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
  bool is_basic(int id) const {
    return id >= 0 && id < static_cast<int>(basis.state.size()) && basis.state[id] == VarState::Basic;
  }
};

struct LpOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int max_iterations = 0;        ///< 0 selects 50*(n+m)+1000
  int refactor_interval = 64;
};

/// Solve with Dantzig pricing and a Bland fallback after 3*(n+m) consecutive
/// degenerate pivots. A warm basis of matching dimension seeds the solve; its
/// primal infeasibilities are removed by a composite phase one.
///
/// Throws Error(IterationLimit) when the pivot cap is exceeded.
LpSolution solve_lp(const LpProblem& problem, const Basis* warm = nullptr,
                    const LpOptions& options = {});

/// One simplex tableau row written as
///     x_basic = rhs - sum_j coef_j * xt_j
/// where xt_j is nonbasic j shifted to its active bound
/// (x_j - lo_j at lower, hi_j - x_j at upper, x_j when free).
struct TableauRow {
  double rhs = 0.0;
  std::vector<std::pair<int, double>> coefs;
};

/// Throws Error(NotBasic) if basic_var is nonbasic in the solution.
TableauRow tableau_row(const LpSolution& solution, const LpProblem& problem, int basic_var);

/// Effective bounds of variable `id` (structural or logical).
VarBound variable_bounds(const LpProblem& problem, int id);

} // namespace vpcforge
