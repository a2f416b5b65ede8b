/**
 * @file disjunction.cpp
 */
#include "vpcforge/disjunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vpcforge {

const char* to_string(RowClass c) {
  switch (c) {
    case RowClass::Original: return "original";
    case RowClass::Disjunction: return "disjunction";
    case RowClass::VarBound: return "var_bound";
  }
  return "?";
}

namespace {

SparseRow unit_row(const BoundChange& bc) {
  SparseRow r;
  const double s = bc.sense == Sense::Ge ? 1.0 : -1.0;
  r.push(bc.var, s);
  r.rhs = s * bc.bound;
  return r;
}

} // namespace

std::vector<SparseRow> DisjunctionTerm::d_rows() const {
  std::vector<SparseRow> out;
  for (const auto& bc : bound_changes) out.push_back(unit_row(bc));
  return out;
}

bool DisjunctionTerm::contains(const Vector& x, double tol) const {
  for (const auto& bc : bound_changes) {
    const double v = x[bc.var];
    if (bc.sense == Sense::Ge && v < bc.bound - tol) return false;
    if (bc.sense == Sense::Le && v > bc.bound + tol) return false;
  }
  return true;
}

double Disjunction::disjunctive_bound() const {
  double best = kInf;
  for (const auto& t : terms) best = std::min(best, t.leaf_lp.obj);
  return best;
}

namespace {

void require_standard(const Instance& inst) {
  for (const auto& r : inst.lp.rows)
    if (r.sense != Sense::Ge) throw Error(ErrorCode::InvalidArgument, "instance rows must be >=");
  for (const auto& b : inst.lp.bounds)
    if (b.lo != 0.0) throw Error(ErrorCode::InvalidArgument, "instance lower bounds must be 0");
}

/// Tightest change per variable and direction, dropping those implied by the
/// instance bounds. Empty optional when the changes contradict each other.
std::optional<std::vector<BoundChange>> normalize(const Instance& inst,
                                                  const std::vector<BoundChange>& changes) {
  std::map<std::pair<int, int>, double> best;
  for (const auto& bc : changes) {
    if (bc.var < 0 || bc.var >= static_cast<int>(inst.num_vars()))
      throw Error(ErrorCode::InvalidArgument, "bound change on unknown variable");
    const auto& b = inst.lp.bounds[bc.var];
    if (bc.sense == Sense::Ge) {
      if (bc.bound <= b.lo) continue;
      auto [it, fresh] = best.try_emplace({bc.var, 0}, bc.bound);
      if (!fresh) it->second = std::max(it->second, bc.bound);
    } else if (bc.sense == Sense::Le) {
      if (bc.bound >= b.hi) continue;
      auto [it, fresh] = best.try_emplace({bc.var, 1}, bc.bound);
      if (!fresh) it->second = std::min(it->second, bc.bound);
    } else {
      throw Error(ErrorCode::InvalidArgument, "bound changes must be >= or <=");
    }
  }
  std::vector<BoundChange> out;
  for (const auto& [key, v] : best) out.push_back({key.first, key.second == 0 ? Sense::Ge : Sense::Le, v});
  for (const auto& bc : out) {
    const auto& b = inst.lp.bounds[bc.var];
    double lo = b.lo, hi = b.hi;
    for (const auto& o : out) {
      if (o.var != bc.var) continue;
      if (o.sense == Sense::Ge) lo = o.bound;
      else hi = o.bound;
    }
    if (lo > hi) return std::nullopt;
  }
  return out;
}

DisjunctionTerm make_term(int id, std::vector<BoundChange> changes) {
  DisjunctionTerm t;
  t.id = id;
  t.bound_changes = std::move(changes);
  return t;
}

struct Node {
  int id = 0;
  std::vector<VarBound> bounds;
  LpSolution lp;
  bool open = false; ///< LP optimal with a fractional integer variable
};

std::vector<BoundChange> changes_from_bounds(const Instance& inst, const std::vector<VarBound>& b) {
  std::vector<BoundChange> out;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j].lo > inst.lp.bounds[j].lo) out.push_back({static_cast<int>(j), Sense::Ge, b[j].lo});
    if (b[j].hi < inst.lp.bounds[j].hi) out.push_back({static_cast<int>(j), Sense::Le, b[j].hi});
  }
  return out;
}

} // namespace

std::vector<int> fractional_integers(const Instance& inst, const Vector& x, double tol) {
  std::vector<int> out;
  for (int j : inst.integer_vars())
    if (fractionality(x[j]) > tol) out.push_back(j);
  return out;
}

LpProblem leaf_problem(const Instance& inst, const std::vector<BoundChange>& changes) {
  LpProblem p = inst.lp;
  for (const auto& bc : changes) {
    auto& b = p.bounds[bc.var];
    if (bc.sense == Sense::Ge) b.lo = std::max(b.lo, bc.bound);
    else b.hi = std::min(b.hi, bc.bound);
  }
  return p;
}

TermRows term_rows(const Instance& inst, const DisjunctionTerm& term) {
  require_standard(inst);
  const std::size_t n = inst.num_vars();
  TermRows tr;
  tr.lp.objective = inst.lp.objective;
  tr.lp.bounds.assign(n, VarBound{-kInf, kInf});
  tr.lower_row.assign(n, -1);
  tr.upper_row.assign(n, -1);
  for (const auto& r : inst.lp.rows) {
    tr.lp.rows.push_back(r);
    tr.row_class.push_back(RowClass::Original);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double hi = inst.lp.bounds[j].hi;
    if (!std::isfinite(hi)) continue;
    SparseRow r;
    r.push(static_cast<int>(j), -1.0);
    r.rhs = -hi;
    tr.upper_row[j] = static_cast<int>(tr.lp.rows.size());
    tr.lp.rows.push_back(r);
    tr.row_class.push_back(RowClass::Original);
  }
  tr.num_original = tr.lp.rows.size();
  const std::vector<SparseRow> d_rows = term.d_rows();
  for (std::size_t k = 0; k < d_rows.size(); ++k) {
    const auto& bc = term.bound_changes[k];
    const int idx = static_cast<int>(tr.lp.rows.size());
    if (bc.sense == Sense::Ge) tr.lower_row[bc.var] = idx;
    else tr.upper_row[bc.var] = idx;
    tr.lp.rows.push_back(d_rows[k]);
    tr.row_class.push_back(RowClass::Disjunction);
  }
  tr.num_disjunction = d_rows.size();
  for (std::size_t j = 0; j < n; ++j) {
    SparseRow r;
    r.push(static_cast<int>(j), 1.0);
    r.rhs = 0.0;
    if (tr.lower_row[j] < 0) tr.lower_row[j] = static_cast<int>(tr.lp.rows.size());
    tr.lp.rows.push_back(r);
    tr.row_class.push_back(RowClass::VarBound);
  }
  return tr;
}

LpProblem term_polyhedron(const Instance& inst, const DisjunctionTerm& term) {
  return term_rows(inst, term).lp;
}

Disjunction build_partial_tree(const Instance& inst, int target_leaves, double frac_tol) {
  if (target_leaves < 2 || target_leaves > 64 || (target_leaves & (target_leaves - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "target leaves must be one of 2,4,...,64");
  require_standard(inst);

  auto is_open = [&](const LpSolution& s) {
    return s.optimal() && !fractional_integers(inst, s.x, frac_tol).empty();
  };

  std::vector<Node> leaves;
  Node root;
  root.bounds = inst.lp.bounds;
  root.lp = solve_lp(inst.lp);
  if (root.lp.status == LpStatus::Infeasible) throw Error(ErrorCode::AllPruned, "LP relaxation infeasible");
  if (root.lp.status == LpStatus::Unbounded)
    throw Error(ErrorCode::InvalidArgument, "LP relaxation unbounded");
  if (!is_open(root.lp)) throw Error(ErrorCode::NoFractional, "LP optimum is integral");
  root.open = true;
  leaves.push_back(std::move(root));

  Disjunction d;
  int next_id = 1;
  while (static_cast<int>(leaves.size()) < target_leaves) {
    int pick = -1;
    for (int i = 0; i < static_cast<int>(leaves.size()); ++i) {
      if (!leaves[i].open) continue;
      if (pick < 0 || leaves[i].lp.obj < leaves[pick].lp.obj ||
          (leaves[i].lp.obj == leaves[pick].lp.obj && leaves[i].id < leaves[pick].id))
        pick = i;
    }
    if (pick < 0) break;
    Node parent = std::move(leaves[pick]);
    leaves.erase(leaves.begin() + pick);

    int var = -1;
    double best = -1.0;
    for (int j : fractional_integers(inst, parent.lp.x, frac_tol)) {
      const double f = fractionality(parent.lp.x[j]);
      if (f > best + 1e-12) {
        best = f;
        var = j;
      }
    }
    const double v = parent.lp.x[var];
    for (int dir = 0; dir < 2; ++dir) {
      Node child;
      child.id = next_id++;
      child.bounds = parent.bounds;
      const bool up = dir == 1;
      const double bound = up ? std::ceil(v) : std::floor(v);
      if (up) child.bounds[var].lo = bound;
      else child.bounds[var].hi = bound;
      d.tree_log.push_back({parent.id, child.id, var, up, bound});
      LpProblem p = inst.lp;
      p.bounds = child.bounds;
      child.lp = solve_lp(p, &parent.lp.basis);
      if (child.lp.status == LpStatus::Infeasible) {
        ++d.pruned;
        continue;
      }
      child.open = is_open(child.lp);
      leaves.push_back(std::move(child));
    }
  }
  if (leaves.empty()) throw Error(ErrorCode::AllPruned, "every leaf is infeasible");

  std::sort(leaves.begin(), leaves.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  for (auto& leaf : leaves) {
    DisjunctionTerm t = make_term(static_cast<int>(d.terms.size()), changes_from_bounds(inst, leaf.bounds));
    t.leaf_lp = std::move(leaf.lp);
    d.terms.push_back(std::move(t));
  }
  return d;
}

Disjunction make_disjunction(const Instance& inst, const std::vector<std::vector<BoundChange>>& terms) {
  require_standard(inst);
  Disjunction d;
  for (const auto& changes : terms) {
    auto normalized = normalize(inst, changes);
    if (!normalized) {
      ++d.pruned;
      continue;
    }
    DisjunctionTerm t = make_term(static_cast<int>(d.terms.size()), std::move(*normalized));
    t.leaf_lp = solve_lp(leaf_problem(inst, t.bound_changes));
    if (t.leaf_lp.status == LpStatus::Infeasible) {
      ++d.pruned;
      continue;
    }
    d.terms.push_back(std::move(t));
  }
  if (d.terms.empty()) throw Error(ErrorCode::AllPruned, "every term is infeasible");
  return d;
}

} // namespace vpcforge
