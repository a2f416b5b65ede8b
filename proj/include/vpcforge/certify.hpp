/**
 * @file certify.hpp
 * @brief Farkas certificates of a cut read off basis cones: v_i = alpha' r^i.
 */
#pragma once

#include "vpcforge/collector.hpp"
#include "vpcforge/prlp.hpp"

#include <optional>
#include <vector>

namespace vpcforge {

/// Multipliers of one term, on the cobasis and scattered over the rows of Q^t.
struct TermCertificate {
  int term_id = 0;
  std::vector<int> cobasis;
  std::vector<RowClass> row_class;
  Vector v;       ///< per cobasis row
  Vector u;       ///< original rows (instance rows, then upper-bound rows)
  Vector u0;      ///< disjunction rows
  Vector u_hat;   ///< nonnegativity rows, one per variable
  double beta_t = 0.0; ///< v' b_N
  int cobases_tried = 1;
  bool exact_checked = false;
  bool exact_ok = false;
};

struct FarkasCertificate {
  std::vector<std::optional<TermCertificate>> terms; ///< empty where no cobasis validated
  std::vector<std::string> failures;                 ///< reason per missing term

  bool complete() const;
};

/// min over the points of alpha' p.
double supporting_constant(const Cut& cut, const std::vector<Vector>& term_points);

/// v_i = alpha' r^i. Throws InvalidCone when some v_i < -tol.
Vector recover_certificate(const Cut& cut, const BasisCone& cone, double tol = 1e-7);

/// Scatter v over the rows of Q^t by row class.
TermCertificate split_certificate(const Vector& v, const BasisCone& cone, const TermRows& rows);

struct CobasisSearch {
  std::size_t cap = 2000; ///< cobases examined before giving up
  double tol = 1e-7;
};

/// A cone at the term vertex whose certificate validates for the cut. Tries
/// the stored cone first; at a degenerate vertex, enumerates n independent
/// tight rows containing at least one disjunction row, in lexicographic order
/// of row indices. Throws DegenerateUnresolved when nothing validates within
/// the cap, InvalidCone when the vertex is simple and the cone rejects the cut.
BasisCone select_term_vertex(const Cut& cut, const BasisCone& stored, const TermRows& rows,
                             const CobasisSearch& search = {}, int* tried = nullptr);

/// Exact re-check: solve v A_N = alpha over the rationals (alpha and A_N read
/// exactly from their doubles) and test v >= -tol and |v - v_float| <= tol_lin.
struct ExactCheck {
  bool solved = false;
  bool nonnegative = false;
  bool matches_float = false;
  std::vector<Rational> v;
  Rational beta_t; ///< v b_N
  bool ok() const { return solved && nonnegative && matches_float; }
};
ExactCheck verify_exact(const Cut& cut, const BasisCone& cone, const Vector& v_float,
                        double tol = 1e-7, double tol_lin = 1e-9);

/// Residuals of the certificate identities for term rows:
/// max_k |u A_k + u0 D_k + u_hat_k - alpha_k| and |u b + u0 D_0 - beta_t|.
std::pair<double, double> certificate_residuals(const TermCertificate& cert, const TermRows& rows,
                                                const Cut& cut);

struct CertifyOptions {
  CobasisSearch search;
  bool exact = true;        ///< exact re-check when n <= exact_max_vars
  std::size_t exact_max_vars = 50;
};

/// Certificates for every term of the collection.
FarkasCertificate certify_cut(const Cut& cut, const PointRayCollection& collection,
                              const std::vector<TermRows>& rows, const CertifyOptions& options = {});

} // namespace vpcforge
