/**
 * @file monoidal.cpp
 */
#include "vpcforge/monoidal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vpcforge {

namespace {

double clamp0(double v) { return std::abs(v) < kMonoidClamp ? 0.0 : v; }

MonoidInstance clamped(const MonoidInstance& mi) {
  MonoidInstance c = mi;
  for (auto& v : c.d) v = std::max(0.0, clamp0(v));
  for (auto& v : c.s) v = std::max(0.0, clamp0(v));
  return c;
}

/// Largest integer m with -s + d m <= z (d > 0).
long long largest_below(double d, double s, double z) {
  auto k = static_cast<long long>(std::floor((z + s) / d));
  while (-s + d * static_cast<double>(k + 1) <= z) ++k;
  while (-s + d * static_cast<double>(k) > z) --k;
  return k;
}

long long count_below(const MonoidInstance& mi, double z) {
  long long total = 0;
  for (std::size_t t = 0; t < mi.d.size(); ++t) total += largest_below(mi.d[t], mi.s[t], z);
  return total;
}

/// Lower the largest terms until sum(m) == 0.
void tighten(const MonoidInstance& mi, std::vector<long long>& m) {
  long long sum = std::accumulate(m.begin(), m.end(), 0LL);
  while (sum > 0) {
    std::size_t pick = 0;
    double best = -kInf;
    for (std::size_t t = 0; t < m.size(); ++t) {
      const double v = -mi.s[t] + mi.d[t] * static_cast<double>(m[t]);
      if (v > best) {
        best = v;
        pick = t;
      }
    }
    --m[pick];
    --sum;
  }
}

Rational floor_rat(const Rational& q) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  cpp_int f = num / den;
  if (num < 0 && f * den != num) f -= 1;
  return Rational(f);
}

} // namespace

double monoid_objective(const MonoidInstance& raw, const std::vector<long long>& m) {
  const MonoidInstance mi = clamped(raw);
  double best = -kInf;
  for (std::size_t t = 0; t < mi.d.size(); ++t)
    best = std::max(best, -mi.s[t] + mi.d[t] * static_cast<double>(m[t]));
  return best;
}

MonoidSolution solve_monoid(const MonoidInstance& raw) {
  const MonoidInstance mi = clamped(raw);
  const std::size_t T = mi.d.size();
  MonoidSolution sol;
  sol.m.assign(T, 0);
  if (T == 0) return sol;

  const bool any_zero = std::any_of(mi.d.begin(), mi.d.end(), [](double v) { return v == 0.0; });
  if (any_zero) {
    double z = -kInf;
    std::size_t absorber = T;
    for (std::size_t t = 0; t < T; ++t) {
      if (mi.d[t] != 0.0) continue;
      z = std::max(z, -mi.s[t]);
      if (absorber == T) absorber = t;
    }
    long long others = 0;
    for (std::size_t t = 0; t < T; ++t) {
      if (mi.d[t] == 0.0) continue;
      sol.m[t] = largest_below(mi.d[t], mi.s[t], z);
      others += sol.m[t];
    }
    sol.m[absorber] = -others;
    sol.z = monoid_objective(mi, sol.m);
    return sol;
  }

  // Every m in the monoid has some m_t >= 0, so z >= -max s. Feasibility of
  // a level z is counted with the same arithmetic as the objective.
  const double smax = *std::max_element(mi.s.begin(), mi.s.end());
  double lo = -smax, hi = -smax;
  if (count_below(mi, lo) < 0) {
    hi = 0.0;
    for (int it = 0; it < 64; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(mi, mid) >= 0) hi = mid;
      else lo = mid;
    }
  }
  // Snap: m at level hi has sum >= 0 and objective at the breakpoint <= hi.
  for (std::size_t t = 0; t < T; ++t) sol.m[t] = largest_below(mi.d[t], mi.s[t], hi);
  tighten(mi, sol.m);
  sol.z = monoid_objective(mi, sol.m);
  return sol;
}

std::pair<Rational, std::vector<long long>> solve_monoid_exact(const std::vector<Rational>& d_in,
                                                               const std::vector<Rational>& s_in) {
  const std::size_t T = d_in.size();
  std::vector<Rational> d = d_in, s = s_in;
  const Rational eps = to_rational(kMonoidClamp);
  for (auto& v : d)
    if (v < eps) v = 0;
  for (auto& v : s)
    if (v < eps) v = 0;
  std::vector<long long> m(T, 0);
  if (T == 0) return {Rational(0), m};

  auto value = [&](std::size_t t, long long k) { return -s[t] + d[t] * Rational(k); };
  auto largest = [&](std::size_t t, const Rational& z) {
    return floor_rat((z + s[t]) / d[t]).convert_to<long long>();
  };

  MonoidInstance fl;
  for (std::size_t t = 0; t < T; ++t) {
    fl.d.push_back(d[t].convert_to<double>());
    fl.s.push_back(s[t].convert_to<double>());
  }
  const MonoidSolution start = solve_monoid(fl);

  if (std::any_of(d.begin(), d.end(), [](const Rational& v) { return v == 0; })) {
    Rational z;
    bool first = true;
    std::size_t absorber = T;
    for (std::size_t t = 0; t < T; ++t) {
      if (d[t] != 0) continue;
      if (first || -s[t] > z) z = -s[t];
      first = false;
      if (absorber == T) absorber = t;
    }
    long long others = 0;
    for (std::size_t t = 0; t < T; ++t) {
      if (d[t] == 0) continue;
      m[t] = largest(t, z);
      others += m[t];
    }
    m[absorber] = -others;
    return {z, m};
  }

  // Exact value of the float solution, then walk down the breakpoints.
  Rational z = value(0, start.m[0]);
  for (std::size_t t = 1; t < T; ++t) z = std::max(z, value(t, start.m[t]));
  for (;;) {
    Rational prev;
    bool first = true;
    for (std::size_t t = 0; t < T; ++t) {
      const Rational q = (z + s[t]) / d[t];
      Rational k = floor_rat(q);
      if (k == q) k -= 1;
      const Rational b = d[t] * k - s[t];
      if (first || b > prev) prev = b;
      first = false;
    }
    long long total = 0;
    for (std::size_t t = 0; t < T; ++t) total += largest(t, prev);
    if (total < 0) break;
    z = prev;
  }
  for (std::size_t t = 0; t < T; ++t) m[t] = largest(t, z);
  long long sum = std::accumulate(m.begin(), m.end(), 0LL);
  while (sum > 0) {
    std::size_t pick = 0;
    for (std::size_t t = 1; t < T; ++t)
      if (value(t, m[t]) > value(pick, m[pick])) pick = t;
    --m[pick];
    --sum;
  }
  return {z, m};
}

TermBounds term_lower_bounds(const Instance& inst, const DisjunctionTerm& term) {
  TermBounds tb;
  const std::vector<SparseRow> d_rows = term.d_rows();
  for (std::size_t i = 0; i < d_rows.size(); ++i) {
    const SparseRow& row = d_rows[i];
    LpProblem p = inst.lp;
    std::fill(p.objective.begin(), p.objective.end(), 0.0);
    bool integer_row = true;
    for (std::size_t k = 0; k < row.size(); ++k) {
      p.objective[static_cast<std::size_t>(row.index[k])] = row.value[k];
      integer_row = integer_row && inst.is_integer(row.index[k]) && row.value[k] == std::round(row.value[k]);
    }
    const LpSolution s = solve_lp(p);
    if (!s.optimal()) {
      tb.lower.push_back(-kInf);
      tb.delta.push_back(kInf);
      tb.finite.push_back(false);
      continue;
    }
    const double l = integer_row ? std::floor(s.obj + 1e-9) : s.obj;
    tb.lower.push_back(l);
    tb.delta.push_back(std::max(0.0, row.rhs - l));
    tb.finite.push_back(true);
  }
  return tb;
}

StrengthenResult strengthen_cut(const Cut& cut, const FarkasCertificate& cert,
                                const std::vector<TermBounds>& bounds, const Instance& inst,
                                double tol) {
  StrengthenResult res;
  res.cut = cut;
  res.cut.provenance.strengthened = false;

  std::string blocked;
  std::vector<double> d;
  for (std::size_t t = 0; t < cert.terms.size() && blocked.empty(); ++t) {
    if (!cert.terms[t]) {
      blocked = "term " + std::to_string(t) + " has no certificate";
      break;
    }
    const TermCertificate& tc = *cert.terms[t];
    double dt = 0.0;
    for (Eigen::Index i = 0; i < tc.u0.size(); ++i) {
      const double u0 = tc.u0[i];
      if (u0 <= kMonoidClamp) continue;
      if (!bounds[t].finite[static_cast<std::size_t>(i)]) {
        blocked = "term " + std::to_string(t) + " has an unbounded disjunction row";
        break;
      }
      dt += u0 * bounds[t].delta[static_cast<std::size_t>(i)];
    }
    d.push_back(dt);
  }

  for (int k : inst.integer_vars()) {
    CoefficientDelta cd;
    cd.var = k;
    cd.before = cut.alpha[k];
    cd.after = cut.alpha[k];
    if (!blocked.empty()) {
      cd.skipped = true;
      cd.reason = blocked;
      ++res.skipped_coefficients;
      res.coefficients.push_back(cd);
      continue;
    }
    MonoidInstance mi;
    mi.d = d;
    for (const auto& tc : cert.terms) mi.s.push_back(tc->u_hat[k]);
    const MonoidSolution sol = solve_monoid(mi);
    const double z = std::min(0.0, sol.z);
    cd.after = cut.alpha[k] + z;
    res.cut.alpha[k] = cd.after;
    if (cd.after < cd.before - tol) {
      ++res.strengthened_coefficients;
      res.cut.provenance.strengthened = true;
    }
    res.coefficients.push_back(cd);
  }
  return res;
}

} // namespace vpcforge
