/**
 * @file linalg.hpp
 * @brief Dense kernels: cobasis inverses by Gaussian elimination and an
 *        exact-rational verification path.
 */
#pragma once

#include "vpcforge/common.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace vpcforge {

/// The n x n submatrix of n tight constraint rows at a vertex.
struct CobasisMatrix {
  std::vector<int> row_indices; ///< indices N into the full constraint list
  Matrix matrix;                ///< rows of A-hat indexed by N
  Vector rhs;                   ///< b-hat indexed by N
};

/// Inverse by Gaussian elimination with partial pivoting.
/// Throws Error(Singular) when a pivot falls below tol_pivot in magnitude.
Matrix invert_partial_pivot(const Matrix& a, double tol_pivot = 1e-10);

/// Columns r^1..r^n of the cobasis inverse; each satisfies A_N r^i = e_i.
std::vector<Vector> inverse_columns(const CobasisMatrix& cobasis, double tol_pivot = 1e-10);

/// Numerical rank of a set of rows (partial pivoting, relative threshold).
int numerical_rank(const Matrix& rows, double tol = 1e-9);

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a double.
Rational to_rational(double v);

/// Solve v A = c exactly (A square). Empty result when A is singular.
std::optional<std::vector<Rational>> solve_left_exact(const std::vector<std::vector<Rational>>& a,
                                                      const std::vector<Rational>& c);

} // namespace vpcforge
