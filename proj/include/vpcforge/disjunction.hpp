/**
 * @file disjunction.hpp
 * @brief Variable disjunctions from the leaves of a partial branch-and-bound
 *        tree, and the row layout of each term polyhedron Q^t.
 */
#pragma once

#include "vpcforge/instance.hpp"

#include <cstdint>
#include <vector>

namespace vpcforge {

enum class RowClass : std::uint8_t { Original, Disjunction, VarBound };
const char* to_string(RowClass c);

/// x_var >= bound (Sense::Ge) or x_var <= bound (Sense::Le).
struct BoundChange {
  int var = 0;
  Sense sense = Sense::Ge;
  double bound = 0.0;
  bool operator==(const BoundChange&) const = default;
};

struct DisjunctionTerm {
  int id = 0;
  std::vector<BoundChange> bound_changes; ///< tightest per variable and direction
  LpSolution leaf_lp;                     ///< min c'x over Q^t

  /// The bound changes as >= unit rows, in order.
  std::vector<SparseRow> d_rows() const;
  std::size_t q_t() const { return bound_changes.size(); }
  /// Whether x satisfies every bound change within tol.
  bool contains(const Vector& x, double tol = 1e-9) const;
};

/// One branching decision: node `node` split on `var` into the child `child`.
struct BranchRecord {
  int node = 0;
  int child = 0;
  int var = 0;
  bool up = false;
  double bound = 0.0;
};

struct Disjunction {
  std::vector<DisjunctionTerm> terms;
  std::vector<BranchRecord> tree_log;
  int pruned = 0; ///< infeasible leaves dropped

  /// min over terms of the leaf LP value.
  double disjunctive_bound() const;
};

/// Rows of Q^t in the order original, disjunction, nonnegativity. Original
/// rows are the instance rows followed by x_j <= u_j (as -x_j >= -u_j) for every
/// finite upper bound u_j.
struct TermRows {
  LpProblem lp; ///< all rows >=, every variable free
  std::vector<RowClass> row_class;
  std::size_t num_original = 0;
  std::size_t num_disjunction = 0;
  std::vector<int> lower_row; ///< per variable: row giving its active lower bound
  std::vector<int> upper_row; ///< per variable: row giving its active upper bound, or -1

  std::size_t size() const { return lp.rows.size(); }
  std::size_t first_disjunction() const { return num_original; }
  std::size_t first_var_bound() const { return num_original + num_disjunction; }
};

/// Throws InvalidArgument unless the instance is in >=-form with zero lower bounds.
TermRows term_rows(const Instance& instance, const DisjunctionTerm& term);

/// Q^t as an explicit row list (q + q_t + n rows plus upper-bound rows).
LpProblem term_polyhedron(const Instance& instance, const DisjunctionTerm& term);

/// The instance LP with the bound changes applied to the variable bounds.
LpProblem leaf_problem(const Instance& instance, const std::vector<BoundChange>& changes);

/// Branch until `target_leaves` leaves are active. Most-fractional branching
/// (ties to the lowest index), best-bound node selection (ties to the oldest
/// node). Integral leaves stay as terms; infeasible leaves are dropped.
/// Throws NoFractional when the root LP optimum is integral, AllPruned when
/// no leaf survives, InvalidArgument for an unsupported target.
Disjunction build_partial_tree(const Instance& instance, int target_leaves,
                               double frac_tol = 1e-5);

/// A disjunction from explicit terms (bound-change lists). Leaf LPs are solved
/// and infeasible terms dropped. Validity of the cover is the caller's claim.
Disjunction make_disjunction(const Instance& instance,
                             const std::vector<std::vector<BoundChange>>& terms);

/// Fractional integer variables of x (distance to the nearest integer > tol).
std::vector<int> fractional_integers(const Instance& instance, const Vector& x, double tol = 1e-5);

} // namespace vpcforge
