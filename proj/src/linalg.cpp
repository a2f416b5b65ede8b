/**
 * @file linalg.cpp
 */
#include "vpcforge/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>

namespace vpcforge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotBasic: return "NotBasic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoFractional: return "NoFractional";
    case ErrorCode::AllPruned: return "AllPruned";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::InvalidCone: return "InvalidCone";
    case ErrorCode::DegenerateUnresolved: return "DegenerateUnresolved";
    case ErrorCode::ZeroGap: return "ZeroGap";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Matrix invert_partial_pivot(const Matrix& a, double tol_pivot) {
  const auto n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  Matrix work = a;
  Matrix inv = Matrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(work(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(work(i, k)) > best) {
        best = std::abs(work(i, k));
        piv = i;
      }
    }
    if (best < tol_pivot)
      throw Error(ErrorCode::Singular, "pivot " + std::to_string(best) + " in column " +
                                           std::to_string(k) + " below tolerance");
    if (piv != k) {
      work.row(k).swap(work.row(piv));
      inv.row(k).swap(inv.row(piv));
    }
    const double d = work(k, k);
    work.row(k) /= d;
    inv.row(k) /= d;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = work(i, k);
      if (f == 0.0) continue;
      work.row(i) -= f * work.row(k);
      inv.row(i) -= f * inv.row(k);
    }
  }
  return inv;
}

std::vector<Vector> inverse_columns(const CobasisMatrix& cobasis, double tol_pivot) {
  const Matrix inv = invert_partial_pivot(cobasis.matrix, tol_pivot);
  std::vector<Vector> rays;
  rays.reserve(static_cast<std::size_t>(inv.cols()));
  for (Eigen::Index i = 0; i < inv.cols(); ++i) rays.emplace_back(inv.col(i));
  return rays;
}

int numerical_rank(const Matrix& rows, double tol) {
  Matrix w = rows;
  const auto m = w.rows();
  const auto n = w.cols();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, w.row(i).cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0;
  int rank = 0;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index piv = r;
    for (Eigen::Index i = r + 1; i < m; ++i)
      if (std::abs(w(i, c)) > std::abs(w(piv, c))) piv = i;
    if (std::abs(w(piv, c)) <= tol * scale) continue;
    w.row(r).swap(w.row(piv));
    for (Eigen::Index i = r + 1; i < m; ++i) {
      const double f = w(i, c) / w(r, c);
      if (f != 0.0) w.row(i) -= f * w.row(r);
    }
    ++r;
    ++rank;
  }
  return rank;
}

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite value to rational");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp); // v = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  using boost::multiprecision::cpp_int;
  cpp_int num = scaled;
  cpp_int den = 1;
  if (exp >= 0) num <<= exp;
  else den <<= -exp;
  return Rational(num, den);
}

std::optional<std::vector<Rational>> solve_left_exact(const std::vector<std::vector<Rational>>& a,
                                                      const std::vector<Rational>& c) {
  // v A = c  <=>  A' v' = c'.
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[j][i];
    m[i][n] = c[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[k], m[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = m[i][n] / m[i][i];
  return v;
}

} // namespace vpcforge
