/**
 * @file monoidal.hpp
 * @brief Monoidal strengthening of certified disjunctive cuts.
 */
#pragma once

#include "vpcforge/certify.hpp"

#include <string>
#include <vector>

namespace vpcforge {

/// One integer coefficient's problem: min over m in Z^T with sum(m) >= 0 of
/// max_t (-s_t + d_t m_t).
struct MonoidInstance {
  std::vector<double> d;
  std::vector<double> s;
};

struct MonoidSolution {
  double z = 0.0;
  std::vector<long long> m;
};

/// Values below this are treated as exactly zero.
inline constexpr double kMonoidClamp = 1e-9;

/// max_t (-s_t + d_t m_t) after clamping.
double monoid_objective(const MonoidInstance& mi, const std::vector<long long>& m);

/// Exact optimum. With a zero d_t the optimum is the largest -s_t over those
/// terms; otherwise bisection on z in [-max s, 0] followed by a snap to the
/// breakpoint grid {d_t j - s_t}. The returned z equals the objective of m.
MonoidSolution solve_monoid(const MonoidInstance& mi);

/// Rational replay: walks breakpoints downward from the float optimum until
/// the next one is infeasible. Returns the optimal value and an attaining m.
std::pair<Rational, std::vector<long long>> solve_monoid_exact(const std::vector<Rational>& d,
                                                               const std::vector<Rational>& s);

/// Lower bounds l_i of each disjunction row over P and Delta_i = D0_i - l_i.
struct TermBounds {
  std::vector<double> lower;
  std::vector<double> delta;
  std::vector<bool> finite;
};

/// LP bound of each unit row over P, floored for integer variables.
TermBounds term_lower_bounds(const Instance& instance, const DisjunctionTerm& term);

struct CoefficientDelta {
  int var = 0;
  double before = 0.0;
  double after = 0.0;
  bool skipped = false;
  std::string reason; ///< set when skipped
};

struct StrengthenResult {
  Cut cut;
  std::vector<CoefficientDelta> coefficients; ///< one per integer variable
  int strengthened_coefficients = 0;
  int skipped_coefficients = 0;
};

/// alpha_k + z*_k for every integer k. A coefficient is left alone when some
/// term lacks a certificate, or has an infinite Delta on a row it uses.
StrengthenResult strengthen_cut(const Cut& cut, const FarkasCertificate& certificate,
                                const std::vector<TermBounds>& bounds, const Instance& instance,
                                double tol = 1e-7);

} // namespace vpcforge
