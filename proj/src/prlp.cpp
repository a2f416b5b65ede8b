/**
 * @file prlp.cpp
 */
#include "vpcforge/prlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace vpcforge {

Cut normalized(Cut cut) {
  const double m = cut.alpha.size() ? cut.alpha.cwiseAbs().maxCoeff() : 0.0;
  if (m > 0.0) {
    cut.alpha /= m;
    cut.beta /= m;
  }
  return cut;
}

bool same_cut(const Cut& a, const Cut& b, double tol) {
  if (a.alpha.size() != b.alpha.size()) return false;
  const double dot = a.alpha.dot(b.alpha) + a.beta * b.beta;
  const double na = std::sqrt(a.alpha.squaredNorm() + a.beta * a.beta);
  const double nb = std::sqrt(b.alpha.squaredNorm() + b.beta * b.beta);
  if (na == 0.0 || nb == 0.0) return na == nb;
  return dot / (na * nb) > 1.0 - tol;
}

Prlp build_prlp(const PointRayCollection& c, const Vector& xbar) {
  Prlp p;
  p.xbar = xbar;
  const auto n = static_cast<std::size_t>(xbar.size());
  p.lp.objective.assign(n, 0.0);
  p.lp.bounds.assign(n, VarBound{-kInf, kInf});
  auto add_row = [&](const Vector& v, double rhs) {
    SparseRow r;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (v[j] != 0.0) r.push(static_cast<int>(j), v[j]);
    r.rhs = rhs;
    p.lp.rows.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    p.points.push_back(c.points[i] - xbar);
    p.point_terms.push_back(c.point_terms[i]);
    add_row(p.points.back(), 1.0);
  }
  for (const auto& r : c.rays) {
    p.rays.push_back(r);
    add_row(r, 0.0);
  }
  const LpSolution feas = solve_lp(p.lp);
  if (feas.status == LpStatus::Infeasible)
    throw Error(ErrorCode::NotSeparable, "no cut with positive right-hand side separates the point");
  return p;
}

std::vector<Cut> harvest_cuts(const Prlp& prlp, std::size_t limit, const HarvestContext& ctx) {
  std::vector<Cut> cuts;
  if (limit == 0) return cuts;
  const std::size_t n = prlp.num_vars();

  struct Objective {
    std::vector<double> c;
    std::string label;
  };
  std::vector<Objective> schedule;
  std::vector<std::size_t> order(prlp.points.size());
  std::iota(order.begin(), order.end(), 0);
  auto obj_value = [&](std::size_t i) {
    double v = 0.0;
    const Vector p = prlp.points[i] + prlp.xbar;
    for (std::size_t j = 0; j < n && j < ctx.objective.size(); ++j) v += ctx.objective[j] * p[j];
    return v;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return obj_value(a) < obj_value(b); });
  for (std::size_t i : order) {
    const Vector& q = prlp.points[i];
    schedule.push_back({std::vector<double>(q.data(), q.data() + q.size()),
                        "point:" + std::to_string(i)});
  }
  for (int j : ctx.fractional) {
    for (int sgn : {1, -1}) {
      std::vector<double> c(n, 0.0);
      c[static_cast<std::size_t>(j)] = sgn;
      schedule.push_back({c, std::string(sgn > 0 ? "+e" : "-e") + std::to_string(j)});
    }
  }

  LpProblem lp = prlp.lp;
  Basis warm;
  for (const auto& obj : schedule) {
    if (cuts.size() >= limit) break;
    lp.objective = obj.c;
    const LpSolution s = solve_lp(lp, warm.empty() ? nullptr : &warm);
    if (!s.optimal()) continue;
    warm = s.basis;

    Cut cut;
    cut.alpha = s.x;
    cut.beta = 1.0 + s.x.dot(prlp.xbar);
    if (!std::isfinite(cut.beta) || cut.alpha.cwiseAbs().maxCoeff() == 0.0) continue;
    if (cut.violation(prlp.xbar) < ctx.min_violation) continue;

    // Validity over the collection, checked in translated coordinates.
    bool valid = true;
    std::set<int> tight;
    for (std::size_t i = 0; i < prlp.points.size() && valid; ++i) {
      const double act = s.x.dot(prlp.points[i]);
      if (act < 1.0 - ctx.feas_tol) valid = false;
      if (act <= 1.0 + ctx.feas_tol) tight.insert(prlp.point_terms[i].begin(), prlp.point_terms[i].end());
    }
    for (std::size_t i = 0; i < prlp.rays.size() && valid; ++i)
      if (s.x.dot(prlp.rays[i]) < -ctx.feas_tol) valid = false;
    if (!valid) continue;

    cut.provenance.family = "vpc";
    cut.provenance.objective = obj.label;
    cut.provenance.tight_terms.assign(tight.begin(), tight.end());
    cut = normalized(std::move(cut));
    bool dup = false;
    for (const auto& other : cuts) dup = dup || same_cut(other, cut);
    if (!dup) cuts.push_back(std::move(cut));
  }
  return cuts;
}

} // namespace vpcforge
