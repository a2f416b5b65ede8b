/**
 * @file oracles.hpp
 * @brief Test-only reference computations written independently of the
 *        library code paths they check.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;

/// Exact value of a double.
inline Rat exact(double v) {
  int e = 0;
  double m = std::frexp(v, &e);
  // 53 bits of mantissa are enough to make m * 2^53 integral.
  const long long mant = static_cast<long long>(std::ldexp(m, 53));
  Rat r(mant);
  e -= 53;
  Rat p(1);
  for (int i = 0; i < std::abs(e); ++i) p *= 2;
  if (e >= 0) return Rat(r * p);
  return Rat(r / p);
}

/// Solves x M = c exactly (M square, row-major) by Gauss-Jordan on M^T.
inline std::optional<std::vector<Rat>> left_solve(std::vector<std::vector<Rat>> m, std::vector<Rat> c) {
  const std::size_t n = c.size();
  // Transpose: M^T x^T = c^T.
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[j][i];
    a[i][n] = c[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rat f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

struct MonoidBox {
  double z = std::numeric_limits<double>::infinity();
  std::vector<long long> m;
};

/// min over m in [-r, r]^T with sum(m) >= 0 of max_t(-s_t + d_t m_t).
inline MonoidBox monoid_box(const std::vector<double>& d, const std::vector<double>& s, int r) {
  MonoidBox best;
  const std::size_t t = d.size();
  std::vector<long long> m(t, -r);
  while (true) {
    long long sum = 0;
    for (auto v : m) sum += v;
    if (sum >= 0) {
      double z = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t; ++i) z = std::max(z, -s[i] + d[i] * static_cast<double>(m[i]));
      if (z < best.z) {
        best.z = z;
        best.m = m;
      }
    }
    std::size_t i = 0;
    while (i < t && m[i] == r) m[i++] = -r;
    if (i == t) break;
    ++m[i];
  }
  return best;
}

/// Calls visit(x) for every integer point of the box [lo, hi] (all finite)
/// satisfying rows a x >= b, given as dense rows.
inline void lattice_points(const std::vector<long long>& lo, const std::vector<long long>& hi,
                           const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                           const std::function<void(const std::vector<double>&)>& visit) {
  const std::size_t n = lo.size();
  std::vector<long long> x = lo;
  if (n == 0) return;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) act += a[i][j] * static_cast<double>(x[j]);
      ok = act >= b[i] - 1e-9;
    }
    if (ok) visit(std::vector<double>(x.begin(), x.end()));
    std::size_t j = 0;
    while (j < n && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == n) break;
    ++x[j];
  }
}

} // namespace oracle

namespace oracle {

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Optimal value of min over m in Z^T, sum(m) >= 0, of max_t(d_t m_t - s_t)
/// for integer data, from the level-set count: level z is attainable iff every
/// d_t = 0 term has -s_t <= z and, when there is no such term,
/// sum_t floor((z + s_t) / d_t) >= 0.
inline long long monoid_level(const std::vector<long long>& d, const std::vector<long long>& s) {
  long long smax = 0;
  for (auto v : s) smax = std::max(smax, v);
  for (long long z = -smax;; ++z) {
    bool zero_term = false, ok = true;
    long long count = 0;
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (d[t] == 0) {
        zero_term = true;
        ok = ok && -s[t] <= z;
      } else {
        count += floor_div(z + s[t], d[t]);
      }
    }
    if (ok && (zero_term || count >= 0)) return z;
  }
}

} // namespace oracle
