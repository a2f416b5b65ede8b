/**
 * @file gmic.hpp
 * @brief Gomory mixed-integer cuts from the optimal tableau.
 */
#pragma once

#include "vpcforge/prlp.hpp"

#include <vector>

namespace vpcforge {

struct GmicOptions {
  double frac_tol = 1e-5;
  double max_dynamism = 1e7; ///< largest |alpha_j| / smallest nonzero |alpha_j|
};

/// GMI coefficients in the space of shifted nonbasic variables for the row
///     x_B + sum_j abar_j xt_j = rhs,
/// giving sum_j gamma_j xt_j >= 1.
std::vector<double> gmi_coefficients(double rhs, const std::vector<double>& abar,
                                     const std::vector<bool>& integer);

/// One cut per basic integer variable with a fractional value, mapped back to
/// the structural space and normalized. Rows failing the dynamism filter are
/// skipped.
std::vector<Cut> generate_gmics(const Instance& instance, const LpSolution& solution,
                                const GmicOptions& options = {});

/// Basic integer variables with a fractional value.
std::vector<int> gmic_sources(const Instance& instance, const LpSolution& solution,
                              double frac_tol = 1e-5);

} // namespace vpcforge
