/**
 * @file collector.hpp
 * @brief Basis cones at leaf optima and the point-ray collection they span.
 */
#pragma once

#include "vpcforge/disjunction.hpp"
#include "vpcforge/linalg.hpp"

#include <string>
#include <vector>

namespace vpcforge {

/// C^t = {x : A_N x >= b_N} for a cobasis N of n rows tight at the vertex.
struct BasisCone {
  int term_id = 0;
  Vector vertex;
  std::vector<int> cobasis; ///< row indices into TermRows, ascending
  Matrix matrix;            ///< A_N
  Vector rhs;               ///< b_N
  std::vector<Vector> rays; ///< r^i = column i of A_N^{-1}, unnormalized
  std::vector<RowClass> row_class;
  bool degenerate = false;  ///< more than n rows tight at the vertex
  int num_tight = 0;

  std::size_t dim() const { return cobasis.size(); }
};

/// Rows of `rows` tight at x: |a x - b| <= tol * (1 + |b|).
std::vector<int> tight_rows(const TermRows& rows, const Vector& x, double tol = 1e-7);

/// Cone for an explicit cobasis. Throws Singular if the rows are dependent.
BasisCone basis_cone_from_rows(const TermRows& rows, int term_id, const Vector& vertex,
                               std::vector<int> cobasis, double feas_tol = 1e-7);

/// Cone at the leaf LP optimum, cobasis read off the optimal basis.
/// Throws InvalidArgument when the leaf LP is not optimal.
BasisCone term_basis_cone(const Instance& instance, const DisjunctionTerm& term,
                          double feas_tol = 1e-7);

struct PointRayCollection {
  std::vector<Vector> points;
  std::vector<std::vector<int>> point_terms;
  std::vector<Vector> rays; ///< as first seen, unnormalized
  std::vector<std::vector<int>> ray_terms;
  std::vector<BasisCone> cones; ///< one per term, in term order

  std::size_t num_terms() const { return cones.size(); }
  /// Points contributed by one term.
  std::vector<Vector> term_points(int term_id) const;
};

/// Union of the cones' vertices and rays. Rays are compared after scaling to
/// unit max-norm, points directly, both within 1e-9.
PointRayCollection assemble_collection(std::vector<BasisCone> cones);

/// JSON dump: points, rays and per-term cobases.
std::string collection_to_json(const PointRayCollection& collection);

} // namespace vpcforge
