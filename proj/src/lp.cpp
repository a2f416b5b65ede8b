/**
 * @file lp.cpp
 * @brief Bounded-variable revised simplex with an explicit basis inverse.
 */
#include "vpcforge/lp.hpp"
#include "vpcforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vpcforge {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

double SparseRow::dot(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < index.size(); ++k) s += value[k] * x[index[k]];
  return s;
}

double SparseRow::dot(const Vector& x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < index.size(); ++k) s += value[k] * x[index[k]];
  return s;
}

void LpProblem::validate() const {
  const auto n = static_cast<int>(num_vars());
  if (bounds.size() != objective.size())
    throw Error(ErrorCode::InvalidArgument, "bounds/objective size mismatch");
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j]))
      throw Error(ErrorCode::InvalidArgument, "non-finite objective coefficient");
    if (std::isnan(bounds[j].lo) || std::isnan(bounds[j].hi) || bounds[j].lo > bounds[j].hi)
      throw Error(ErrorCode::InvalidArgument, "invalid bounds on variable " + std::to_string(j));
  }
  for (const auto& r : rows) {
    if (r.index.size() != r.value.size())
      throw Error(ErrorCode::InvalidArgument, "row index/value size mismatch");
    if (!std::isfinite(r.rhs)) throw Error(ErrorCode::InvalidArgument, "non-finite rhs");
    for (std::size_t k = 0; k < r.index.size(); ++k) {
      if (r.index[k] < 0 || r.index[k] >= n)
        throw Error(ErrorCode::InvalidArgument, "row references unknown variable");
      if (!std::isfinite(r.value[k]))
        throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
    }
  }
}

std::vector<double> LpProblem::row_slacks(const Vector& x) const {
  std::vector<double> s(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) s[i] = rows[i].dot(x) - rows[i].rhs;
  return s;
}

double LpProblem::max_violation(const Vector& x) const {
  double worst = 0.0;
  for (const auto& r : rows) {
    const double s = r.dot(x) - r.rhs;
    if (r.sense != Sense::Le) worst = std::max(worst, -s);
    if (r.sense != Sense::Ge) worst = std::max(worst, s);
  }
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    worst = std::max(worst, bounds[j].lo - x[j]);
    worst = std::max(worst, x[j] - bounds[j].hi);
  }
  return worst;
}

VarBound variable_bounds(const LpProblem& problem, int id) {
  const int n = static_cast<int>(problem.num_vars());
  if (id < n) return problem.bounds[id];
  switch (problem.rows[id - n].sense) {
    case Sense::Ge: return {0.0, kInf};
    case Sense::Le: return {-kInf, 0.0};
    case Sense::Eq: return {0.0, 0.0};
  }
  return {0.0, kInf};
}

namespace {

/// Dense working copy of a problem plus a basis and its inverse.
class Workspace {
 public:
  Workspace(const LpProblem& p, const LpOptions& opt) : opt_(opt) {
    n_ = static_cast<int>(p.num_vars());
    m_ = static_cast<int>(p.num_rows());
    total_ = n_ + m_;
    A_ = Matrix::Zero(m_, n_);
    b_ = Vector::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      const auto& r = p.rows[i];
      for (std::size_t k = 0; k < r.index.size(); ++k) A_(i, r.index[k]) += r.value[k];
      b_[i] = r.rhs;
    }
    lo_.resize(total_);
    hi_.resize(total_);
    cost_.assign(total_, 0.0);
    for (int id = 0; id < total_; ++id) {
      const VarBound vb = variable_bounds(p, id);
      lo_[id] = vb.lo;
      hi_[id] = vb.hi;
    }
    for (int j = 0; j < n_; ++j) cost_[j] = p.objective[j];
    x_.assign(total_, 0.0);
    pos_.assign(total_, -1);
  }

  int n() const { return n_; }
  int m() const { return m_; }

  void cold_basis() {
    head_.resize(m_);
    state_.assign(total_, VarState::AtLower);
    for (int j = 0; j < n_; ++j) state_[j] = default_state(j);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      state_[n_ + i] = VarState::Basic;
    }
    sync_positions();
  }

  bool load_basis(const Basis& warm) {
    if (static_cast<int>(warm.state.size()) != total_ || static_cast<int>(warm.basic.size()) != m_)
      return false;
    int count = 0;
    for (auto s : warm.state) count += (s == VarState::Basic);
    if (count != m_) return false;
    for (int v : warm.basic)
      if (v < 0 || v >= total_ || warm.state[v] != VarState::Basic) return false;
    head_ = warm.basic;
    state_ = warm.state;
    for (int id = 0; id < total_; ++id) {
      if (state_[id] == VarState::Basic) continue;
      state_[id] = repair_state(id, state_[id]);
    }
    sync_positions();
    return true;
  }

  /// Rebuild the basis inverse. Returns false if the basis matrix is singular.
  bool factor() {
    // Rows whose logical is nonbasic pair with the structural basic columns;
    // the remaining logical columns are -e_i and invert trivially.
    std::vector<int> rows_r;
    std::vector<int> cols_c;
    std::vector<int> pos_c;
    for (int i = 0; i < m_; ++i)
      if (state_[n_ + i] != VarState::Basic) rows_r.push_back(i);
    for (int p = 0; p < m_; ++p)
      if (head_[p] < n_) {
        cols_c.push_back(head_[p]);
        pos_c.push_back(p);
      }
    if (rows_r.size() != cols_c.size()) return false;
    const int k = static_cast<int>(cols_c.size());
    Matrix brc(k, k);
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) brc(a, c) = A_(rows_r[a], cols_c[c]);
    Matrix brc_inv;
    try {
      brc_inv = invert_partial_pivot(brc, 1e-11);
    } catch (const Error&) {
      return false;
    }
    binv_ = Matrix::Zero(m_, m_);
    // Columns for rows in R: z_C = Brc^{-1} e_a, z_S = B_SC z_C.
    for (int a = 0; a < k; ++a) {
      const int i = rows_r[a];
      const Vector zc = brc_inv.col(a);
      for (int c = 0; c < k; ++c) binv_(pos_c[c], i) = zc[c];
      for (int p = 0; p < m_; ++p) {
        const int v = head_[p];
        if (v < n_) continue;
        const int srow = v - n_;
        double s = 0.0;
        for (int c = 0; c < k; ++c) s += A_(srow, cols_c[c]) * zc[c];
        binv_(p, i) = s;
      }
    }
    // Columns for rows whose logical is basic: z = -e at that logical's position.
    for (int p = 0; p < m_; ++p) {
      const int v = head_[p];
      if (v >= n_) binv_(p, v - n_) = -1.0;
    }
    return true;
  }

  void set_nonbasic_values() {
    for (int id = 0; id < total_; ++id) {
      switch (state_[id]) {
        case VarState::AtLower: x_[id] = lo_[id]; break;
        case VarState::AtUpper: x_[id] = hi_[id]; break;
        case VarState::Free: x_[id] = 0.0; break;
        case VarState::Basic: break;
      }
    }
  }

  void compute_basic_values() {
    Vector rhs = b_;
    for (int j = 0; j < n_; ++j)
      if (state_[j] != VarState::Basic && x_[j] != 0.0) rhs -= A_.col(j) * x_[j];
    for (int i = 0; i < m_; ++i)
      if (state_[n_ + i] != VarState::Basic) rhs[i] += x_[n_ + i];
    const Vector xb = binv_ * rhs;
    for (int p = 0; p < m_; ++p) x_[head_[p]] = xb[p];
  }

  Vector column(int id) const {
    if (id < n_) return A_.col(id);
    Vector e = Vector::Zero(m_);
    e[id - n_] = -1.0;
    return e;
  }

  Vector ftran(int id) const {
    if (id < n_) return binv_ * A_.col(id);
    return -binv_.col(id - n_);
  }

  double infeasibility(int id) const {
    const double tol = opt_.primal_tol * (1.0 + std::abs(x_[id]));
    if (x_[id] < lo_[id] - tol) return lo_[id] - x_[id];
    if (x_[id] > hi_[id] + tol) return x_[id] - hi_[id];
    return 0.0;
  }

  LpSolution run(int max_iter) {
    LpSolution sol;
    const int bland_trigger = 3 * (total_ > 0 ? total_ : 1);
    int degenerate_run = 0;
    bool bland = false;
    int since_refactor = 0;
    int recheck = 0;
    int iter = 0;

    set_nonbasic_values();
    compute_basic_values();

    while (true) {
      if (since_refactor >= opt_.refactor_interval) {
        if (!factor()) throw Error(ErrorCode::Singular, "basis became singular during simplex");
        compute_basic_values();
        since_refactor = 0;
      }
      // Phase selection by current primal infeasibility of basic variables.
      Vector cb(m_);
      bool phase1 = false;
      for (int p = 0; p < m_; ++p) {
        const int v = head_[p];
        const double tol = opt_.primal_tol * (1.0 + std::abs(x_[v]));
        if (x_[v] < lo_[v] - tol) {
          cb[p] = -1.0;
          phase1 = true;
        } else if (x_[v] > hi_[v] + tol) {
          cb[p] = 1.0;
          phase1 = true;
        } else {
          cb[p] = 0.0;
        }
      }
      if (!phase1)
        for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];

      const Vector y = binv_.transpose() * cb; // y' = cb' Binv
      const Vector ya = A_.transpose() * y;

      // Pricing.
      int enter = -1;
      double best = 0.0;
      double enter_d = 0.0;
      for (int id = 0; id < total_; ++id) {
        const VarState st = state_[id];
        if (st == VarState::Basic) continue;
        if (lo_[id] == hi_[id]) continue;
        const double cj = phase1 ? 0.0 : cost_[id];
        const double d = id < n_ ? cj - ya[id] : cj + y[id - n_];
        bool eligible = false;
        if (st == VarState::AtLower) eligible = d < -opt_.dual_tol;
        else if (st == VarState::AtUpper) eligible = d > opt_.dual_tol;
        else eligible = std::abs(d) > opt_.dual_tol;
        if (!eligible) continue;
        if (bland) {
          enter = id;
          enter_d = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = id;
          enter_d = d;
        }
      }

      if (enter < 0) {
        if (phase1) {
          sol.status = LpStatus::Infeasible;
          break;
        }
        // Confirm optimality on a fresh factorization before accepting.
        if (since_refactor > 0 && recheck < 3) {
          ++recheck;
          if (!factor()) throw Error(ErrorCode::Singular, "basis became singular during simplex");
          compute_basic_values();
          since_refactor = 0;
          continue;
        }
        sol.status = LpStatus::Optimal;
        break;
      }

      if (++iter > max_iter)
        throw Error(ErrorCode::IterationLimit,
                    "simplex exceeded " + std::to_string(max_iter) + " iterations");

      const double dir = enter_d < 0.0 ? 1.0 : -1.0;
      const Vector alpha = ftran(enter);

      // Ratio test.
      double step = kInf;
      int leave_pos = -1;
      bool leave_to_lower = true;
      double leave_pivot = 0.0;
      if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter])) step = hi_[enter] - lo_[enter];
      for (int p = 0; p < m_; ++p) {
        const double a = alpha[p];
        if (std::abs(a) < opt_.pivot_tol) continue;
        const int v = head_[p];
        const double delta = -dir * a;
        const double tol = opt_.primal_tol * (1.0 + std::abs(x_[v]));
        double limit = kInf;
        bool to_lower = true;
        if (delta > 0.0) {
          if (phase1 && x_[v] < lo_[v] - tol) {
            limit = (lo_[v] - x_[v]) / delta;
            to_lower = true;
          } else if (x_[v] <= hi_[v] + tol && std::isfinite(hi_[v])) {
            limit = (hi_[v] - x_[v]) / delta;
            to_lower = false;
          }
        } else {
          if (phase1 && x_[v] > hi_[v] + tol) {
            limit = (x_[v] - hi_[v]) / -delta;
            to_lower = false;
          } else if (x_[v] >= lo_[v] - tol && std::isfinite(lo_[v])) {
            limit = (x_[v] - lo_[v]) / -delta;
            to_lower = true;
          }
        }
        if (!std::isfinite(limit)) continue;
        limit = std::max(limit, 0.0);
        bool take = false;
        if (!std::isfinite(step)) {
          take = true;
        } else {
          const double slack = 1e-12 * (1.0 + std::abs(step));
          if (limit < step - slack) take = true;
          else if (limit <= step + slack) {
            // ties: prefer a pivot over a bound flip, then the larger pivot
            // element (smallest id under Bland)
            if (leave_pos < 0) take = true;
            else if (bland) take = v < head_[leave_pos];
            else take = std::abs(a) > std::abs(leave_pivot);
          }
        }
        if (take) {
          step = limit;
          leave_pos = p;
          leave_to_lower = to_lower;
          leave_pivot = a;
        }
      }

      if (!std::isfinite(step)) {
        if (phase1) {
          // Cannot happen for a correctly priced phase-one column; treat as infeasible.
          sol.status = LpStatus::Infeasible;
          break;
        }
        sol.status = LpStatus::Unbounded;
        break;
      }

      // Apply step.
      if (step > 0.0) {
        x_[enter] += dir * step;
        for (int p = 0; p < m_; ++p) x_[head_[p]] -= dir * step * alpha[p];
      }
      if (step <= 1e-12) {
        if (++degenerate_run > bland_trigger) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      if (leave_pos < 0) {
        // Bound flip of the entering variable.
        state_[enter] = state_[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
        x_[enter] = state_[enter] == VarState::AtLower ? lo_[enter] : hi_[enter];
        continue;
      }

      const int leave = head_[leave_pos];
      x_[leave] = leave_to_lower ? lo_[leave] : hi_[leave];
      state_[leave] = leave_to_lower ? VarState::AtLower : VarState::AtUpper;
      if (lo_[leave] == hi_[leave]) state_[leave] = VarState::AtLower;
      pos_[leave] = -1;
      head_[leave_pos] = enter;
      state_[enter] = VarState::Basic;
      pos_[enter] = leave_pos;
      pivot_inverse(alpha, leave_pos);
      ++since_refactor;
    }

    sol.iterations = iter;
    if (sol.status == LpStatus::Optimal) push_free_variables();
    if (factor()) {
      set_nonbasic_values();
      compute_basic_values();
    }
    fill(sol);
    return sol;
  }

 private:
  VarState default_state(int id) const {
    if (std::isfinite(lo_[id])) return VarState::AtLower;
    if (std::isfinite(hi_[id])) return VarState::AtUpper;
    return VarState::Free;
  }

  VarState repair_state(int id, VarState s) const {
    if (s == VarState::AtLower && std::isfinite(lo_[id])) return s;
    if (s == VarState::AtUpper && std::isfinite(hi_[id])) return s;
    if (s == VarState::Free && !std::isfinite(lo_[id]) && !std::isfinite(hi_[id])) return s;
    return default_state(id);
  }

  void sync_positions() {
    pos_.assign(total_, -1);
    for (int p = 0; p < m_; ++p) pos_[head_[p]] = p;
  }

  void pivot_inverse(const Vector& alpha, int r) {
    const double piv = alpha[r];
    binv_.row(r) /= piv;
    for (int p = 0; p < m_; ++p) {
      if (p == r || alpha[p] == 0.0) continue;
      binv_.row(p) -= alpha[p] * binv_.row(r);
    }
  }

  /// Pivot nonbasic free variables into the basis so the solution is a vertex.
  void push_free_variables() {
    for (int q = 0; q < total_; ++q) {
      if (state_[q] != VarState::Free) continue;
      const Vector alpha = ftran(q);
      int best_p = -1;
      double best_a = 0.0;
      for (int p = 0; p < m_; ++p) {
        const int v = head_[p];
        if (!std::isfinite(lo_[v]) && !std::isfinite(hi_[v])) continue;
        if (std::abs(alpha[p]) > std::max(best_a, 1e-7)) {
          best_a = std::abs(alpha[p]);
          best_p = p;
        }
      }
      if (best_p < 0) continue;
      // Move along the direction that reaches a bound of the best row first;
      // pick the blocking row by a ratio test in that direction.
      for (double dir : {1.0, -1.0}) {
        double step = kInf;
        int leave_pos = -1;
        bool to_lower = true;
        for (int p = 0; p < m_; ++p) {
          const double a = alpha[p];
          if (std::abs(a) < 1e-7) continue;
          const int v = head_[p];
          const double delta = -dir * a;
          double limit = kInf;
          bool tl = true;
          if (delta > 0.0 && std::isfinite(hi_[v])) {
            limit = (hi_[v] - x_[v]) / delta;
            tl = false;
          } else if (delta < 0.0 && std::isfinite(lo_[v])) {
            limit = (x_[v] - lo_[v]) / -delta;
            tl = true;
          }
          if (!std::isfinite(limit)) continue;
          limit = std::max(limit, 0.0);
          if (limit < step - 1e-12 || (limit <= step + 1e-12 && leave_pos >= 0 &&
                                       std::abs(a) > std::abs(alpha[leave_pos]))) {
            step = limit;
            leave_pos = p;
            to_lower = tl;
          }
        }
        if (leave_pos < 0) continue;
        x_[q] += dir * step;
        for (int p = 0; p < m_; ++p) x_[head_[p]] -= dir * step * alpha[p];
        const int leave = head_[leave_pos];
        x_[leave] = to_lower ? lo_[leave] : hi_[leave];
        state_[leave] = to_lower ? VarState::AtLower : VarState::AtUpper;
        if (lo_[leave] == hi_[leave]) state_[leave] = VarState::AtLower;
        pos_[leave] = -1;
        head_[leave_pos] = q;
        state_[q] = VarState::Basic;
        pos_[q] = leave_pos;
        pivot_inverse(alpha, leave_pos);
        break;
      }
    }
  }

  void fill(LpSolution& sol) {
    sol.x.resize(n_);
    for (int j = 0; j < n_; ++j) sol.x[j] = x_[j];
    sol.slacks.assign(x_.begin() + n_, x_.end());
    Vector cb(m_);
    for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];
    const Vector y = binv_.transpose() * cb;
    const Vector ya = A_.transpose() * y;
    sol.duals.assign(y.data(), y.data() + m_);
    sol.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = cost_[j] - ya[j];
    // Fixed nonbasic variables sit at the bound whose multiplier is nonnegative.
    for (int id = 0; id < total_; ++id) {
      if (state_[id] == VarState::Basic || lo_[id] != hi_[id]) continue;
      const double d = id < n_ ? sol.reduced_costs[id] : y[id - n_];
      state_[id] = d < -opt_.dual_tol ? VarState::AtUpper : VarState::AtLower;
    }
    sol.basis.basic = head_;
    sol.basis.state = state_;
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    sol.obj = obj;
    if (sol.status == LpStatus::Infeasible) sol.obj = kInf;
    if (sol.status == LpStatus::Unbounded) sol.obj = -kInf;
  }

  LpOptions opt_;
  int n_ = 0, m_ = 0, total_ = 0;
  Matrix A_;
  Vector b_;
  std::vector<double> lo_, hi_, cost_, x_;
  std::vector<int> head_, pos_;
  std::vector<VarState> state_;
  Matrix binv_;

  friend TableauRow vpcforge::tableau_row(const LpSolution&, const LpProblem&, int);
};

} // namespace

LpSolution solve_lp(const LpProblem& problem, const Basis* warm, const LpOptions& options) {
  problem.validate();
  Workspace ws(problem, options);
  bool loaded = warm != nullptr && ws.load_basis(*warm) && ws.factor();
  if (!loaded) {
    ws.cold_basis();
    if (!ws.factor()) throw Error(ErrorCode::Singular, "slack basis is singular");
  }
  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : 50 * (ws.n() + ws.m()) + 1000;
  return ws.run(cap);
}

TableauRow tableau_row(const LpSolution& solution, const LpProblem& problem, int basic_var) {
  if (!solution.is_basic(basic_var))
    throw Error(ErrorCode::NotBasic, "variable " + std::to_string(basic_var) + " is not basic");
  Workspace ws(problem, LpOptions{});
  if (!ws.load_basis(solution.basis) || !ws.factor())
    throw Error(ErrorCode::Singular, "solution basis cannot be factored");
  ws.set_nonbasic_values();
  ws.compute_basic_values();
  const int r = ws.pos_[basic_var];
  TableauRow row;
  row.rhs = ws.x_[basic_var];
  const int total = ws.n() + ws.m();
  const Vector brow = ws.binv_.row(r);
  for (int id = 0; id < total; ++id) {
    const VarState st = ws.state_[id];
    if (st == VarState::Basic) continue;
    const double a = id < ws.n() ? brow.dot(ws.A_.col(id)) : -brow[id - ws.n()];
    const double coef = st == VarState::AtUpper ? -a : a;
    if (std::abs(coef) > 1e-12) row.coefs.emplace_back(id, coef);
  }
  return row;
}

} // namespace vpcforge
