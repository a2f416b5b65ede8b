/**
 * @file gmic.cpp
 */
#include "vpcforge/gmic.hpp"

#include <cmath>

namespace vpcforge {

std::vector<double> gmi_coefficients(double rhs, const std::vector<double>& abar,
                                     const std::vector<bool>& integer) {
  const double f0 = rhs - std::floor(rhs);
  std::vector<double> gamma(abar.size(), 0.0);
  for (std::size_t j = 0; j < abar.size(); ++j) {
    const double a = abar[j];
    if (integer[j]) {
      const double fj = a - std::floor(a);
      gamma[j] = std::min(fj / f0, (1.0 - fj) / (1.0 - f0));
    } else {
      gamma[j] = a >= 0.0 ? a / f0 : -a / (1.0 - f0);
    }
  }
  return gamma;
}

std::vector<int> gmic_sources(const Instance& inst, const LpSolution& sol, double frac_tol) {
  std::vector<int> out;
  for (int j : inst.integer_vars())
    if (sol.is_basic(j) && fractionality(sol.x[j]) > frac_tol) out.push_back(j);
  return out;
}

std::vector<Cut> generate_gmics(const Instance& inst, const LpSolution& sol, const GmicOptions& opt) {
  std::vector<Cut> cuts;
  if (!sol.optimal()) throw Error(ErrorCode::InvalidArgument, "GMICs need an optimal LP solution");
  const int n = static_cast<int>(inst.num_vars());
  for (int basic : gmic_sources(inst, sol, opt.frac_tol)) {
    const TableauRow row = tableau_row(sol, inst.lp, basic);
    std::vector<double> abar;
    std::vector<bool> integer;
    for (auto [id, c] : row.coefs) {
      abar.push_back(c);
      // Shifted structurals stay integral when their active bound is; logicals
      // are treated as continuous.
      bool is_int = false;
      if (id < n && inst.is_integer(id)) {
        const VarBound b = variable_bounds(inst.lp, id);
        const double active = sol.basis.state[id] == VarState::AtUpper ? b.hi : b.lo;
        is_int = std::isfinite(active) && active == std::round(active);
      }
      integer.push_back(is_int);
    }
    const std::vector<double> gamma = gmi_coefficients(row.rhs, abar, integer);

    // sum gamma_j xt_j >= 1 with xt_j = x_j - lo_j, hi_j - x_j, or a_i x - b_i.
    Cut cut;
    cut.alpha = Vector::Zero(n);
    cut.beta = 1.0;
    for (std::size_t k = 0; k < row.coefs.size(); ++k) {
      const int id = row.coefs[k].first;
      const double g = gamma[k];
      if (g == 0.0) continue;
      if (id < n) {
        const VarBound b = variable_bounds(inst.lp, id);
        if (sol.basis.state[id] == VarState::AtUpper) {
          cut.alpha[id] -= g;
          cut.beta -= g * b.hi;
        } else {
          cut.alpha[id] += g;
          cut.beta += g * b.lo;
        }
      } else {
        const SparseRow& r = inst.lp.rows[static_cast<std::size_t>(id - n)];
        const VarBound b = variable_bounds(inst.lp, id);
        const double sign = sol.basis.state[id] == VarState::AtUpper ? -1.0 : 1.0;
        const double bound = sign > 0 ? b.lo : b.hi;
        for (std::size_t q = 0; q < r.size(); ++q) cut.alpha[r.index[q]] += sign * g * r.value[q];
        cut.beta += sign * g * (r.rhs + bound);
      }
    }
    double big = 0.0, small = kInf;
    for (Eigen::Index j = 0; j < cut.alpha.size(); ++j) {
      const double a = std::abs(cut.alpha[j]);
      if (a < 1e-12) {
        cut.alpha[j] = 0.0;
        continue;
      }
      big = std::max(big, a);
      small = std::min(small, a);
    }
    if (big == 0.0 || big / small > opt.max_dynamism) continue;
    cut.provenance.family = "gmic";
    cut.provenance.objective = "row:" + std::to_string(basic);
    cuts.push_back(normalized(std::move(cut)));
  }
  return cuts;
}

} // namespace vpcforge
