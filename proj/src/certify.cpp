/**
 * @file certify.cpp
 */
#include "vpcforge/certify.hpp"

#include <algorithm>
#include <cmath>

namespace vpcforge {

bool FarkasCertificate::complete() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.has_value(); });
}

double supporting_constant(const Cut& cut, const std::vector<Vector>& term_points) {
  if (term_points.empty()) throw Error(ErrorCode::InvalidArgument, "term has no points");
  double best = kInf;
  for (const auto& p : term_points) best = std::min(best, cut.alpha.dot(p));
  return best;
}

Vector recover_certificate(const Cut& cut, const BasisCone& cone, double tol) {
  const auto n = static_cast<Eigen::Index>(cone.rays.size());
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = cut.alpha.dot(cone.rays[static_cast<std::size_t>(i)]);
    if (v[i] < -tol)
      throw Error(ErrorCode::InvalidCone, "multiplier " + std::to_string(v[i]) + " on row " +
                                              std::to_string(cone.cobasis[static_cast<std::size_t>(i)]));
  }
  return v;
}

TermCertificate split_certificate(const Vector& v, const BasisCone& cone, const TermRows& rows) {
  TermCertificate c;
  c.term_id = cone.term_id;
  c.cobasis = cone.cobasis;
  c.row_class = cone.row_class;
  c.v = v;
  c.u = Vector::Zero(static_cast<Eigen::Index>(rows.num_original));
  c.u0 = Vector::Zero(static_cast<Eigen::Index>(rows.num_disjunction));
  c.u_hat = Vector::Zero(static_cast<Eigen::Index>(rows.lp.num_vars()));
  for (std::size_t i = 0; i < cone.cobasis.size(); ++i) {
    const auto row = static_cast<std::size_t>(cone.cobasis[i]);
    const double val = v[static_cast<Eigen::Index>(i)];
    switch (rows.row_class[row]) {
      case RowClass::Original: c.u[static_cast<Eigen::Index>(row)] = val; break;
      case RowClass::Disjunction:
        c.u0[static_cast<Eigen::Index>(row - rows.first_disjunction())] = val;
        break;
      case RowClass::VarBound:
        c.u_hat[static_cast<Eigen::Index>(row - rows.first_var_bound())] = val;
        break;
    }
  }
  c.beta_t = v.dot(cone.rhs);
  return c;
}

namespace {

/// Advance a k-subset of {0..m-1} in lexicographic order.
bool next_combination(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace

BasisCone select_term_vertex(const Cut& cut, const BasisCone& stored, const TermRows& rows,
                             const CobasisSearch& search, int* tried) {
  if (tried) *tried = 1;
  try {
    recover_certificate(cut, stored, search.tol);
    return stored;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidCone || !stored.degenerate) throw;
  }

  const std::vector<int> tight = tight_rows(rows, stored.vertex, search.tol);
  const int n = static_cast<int>(stored.dim());
  const int m = static_cast<int>(tight.size());
  const bool need_disjunction = rows.num_disjunction > 0;
  std::size_t examined = 1;
  if (m >= n && n > 0) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[i] = i;
    do {
      std::vector<int> cobasis;
      bool has_disjunction = false;
      for (int i : idx) {
        cobasis.push_back(tight[static_cast<std::size_t>(i)]);
        has_disjunction |= rows.row_class[static_cast<std::size_t>(cobasis.back())] == RowClass::Disjunction;
      }
      if (need_disjunction && !has_disjunction) continue;
      if (cobasis == stored.cobasis) continue;
      if (examined >= search.cap) break;
      ++examined;
      try {
        BasisCone cone = basis_cone_from_rows(rows, stored.term_id, stored.vertex, cobasis, search.tol);
        recover_certificate(cut, cone, search.tol);
        if (tried) *tried = static_cast<int>(examined);
        return cone;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Singular && e.code() != ErrorCode::InvalidCone) throw;
      }
    } while (next_combination(idx, m));
  }
  if (tried) *tried = static_cast<int>(examined);
  throw Error(ErrorCode::DegenerateUnresolved,
              "no valid cobasis among " + std::to_string(examined) + " tried at term " +
                  std::to_string(stored.term_id));
}

ExactCheck verify_exact(const Cut& cut, const BasisCone& cone, const Vector& v_float, double tol,
                        double tol_lin) {
  ExactCheck out;
  const auto n = static_cast<std::size_t>(cone.dim());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = to_rational(cut.alpha[static_cast<Eigen::Index>(i)]);
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = to_rational(cone.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  }
  auto v = solve_left_exact(a, alpha);
  if (!v) return out;
  out.solved = true;
  out.v = std::move(*v);
  const Rational neg_tol = -to_rational(tol);
  out.nonnegative = std::all_of(out.v.begin(), out.v.end(), [&](const Rational& x) { return x >= neg_tol; });
  out.matches_float = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = std::abs(out.v[i].convert_to<double>() - v_float[static_cast<Eigen::Index>(i)]);
    if (diff > tol_lin * (1.0 + std::abs(v_float[static_cast<Eigen::Index>(i)]))) out.matches_float = false;
    out.beta_t += out.v[i] * to_rational(cone.rhs[static_cast<Eigen::Index>(i)]);
  }
  return out;
}

std::pair<double, double> certificate_residuals(const TermCertificate& cert, const TermRows& rows,
                                                const Cut& cut) {
  const auto n = static_cast<Eigen::Index>(rows.lp.num_vars());
  Vector lhs = Vector::Zero(n);
  double rhs = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double mult = 0.0;
    const auto ii = static_cast<Eigen::Index>(i);
    if (i < rows.first_disjunction()) mult = cert.u[ii];
    else if (i < rows.first_var_bound()) mult = cert.u0[ii - static_cast<Eigen::Index>(rows.first_disjunction())];
    else mult = cert.u_hat[ii - static_cast<Eigen::Index>(rows.first_var_bound())];
    if (mult == 0.0) continue;
    const auto& r = rows.lp.rows[i];
    for (std::size_t k = 0; k < r.size(); ++k) lhs[r.index[k]] += mult * r.value[k];
    rhs += mult * r.rhs;
  }
  return {(lhs - cut.alpha).cwiseAbs().maxCoeff(), std::abs(rhs - cert.beta_t)};
}

FarkasCertificate certify_cut(const Cut& cut, const PointRayCollection& collection,
                              const std::vector<TermRows>& rows, const CertifyOptions& options) {
  FarkasCertificate fc;
  for (std::size_t t = 0; t < collection.cones.size(); ++t) {
    const BasisCone& stored = collection.cones[t];
    const TermRows& tr = rows[t];
    try {
      const double beta_t = supporting_constant(cut, {stored.vertex});
      if (beta_t < cut.beta - options.search.tol * (1.0 + std::abs(cut.beta)))
        throw Error(ErrorCode::InvalidCone, "cut is violated at the term vertex");
      int tried = 1;
      const BasisCone cone = select_term_vertex(cut, stored, tr, options.search, &tried);
      const Vector v = recover_certificate(cut, cone, options.search.tol);
      TermCertificate cert = split_certificate(v, cone, tr);
      cert.cobases_tried = tried;
      if (options.exact && cone.dim() <= options.exact_max_vars) {
        const ExactCheck ex = verify_exact(cut, cone, v, options.search.tol);
        cert.exact_checked = true;
        cert.exact_ok = ex.ok();
        if (!cert.exact_ok) throw Error(ErrorCode::InvalidCone, "exact re-check of the multipliers failed");
      }
      fc.terms.emplace_back(std::move(cert));
      fc.failures.emplace_back();
    } catch (const Error& e) {
      fc.terms.emplace_back(std::nullopt);
      fc.failures.emplace_back(e.what());
    }
  }
  return fc;
}

} // namespace vpcforge
