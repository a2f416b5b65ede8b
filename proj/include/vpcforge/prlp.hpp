/**
 * @file prlp.hpp
 * @brief The point-ray LP over a collection and cut harvesting.
 */
#pragma once

#include "vpcforge/collector.hpp"

#include <string>
#include <vector>

namespace vpcforge {

struct CutProvenance {
  std::string family = "vpc"; ///< "vpc" or "gmic"
  std::string objective;      ///< PRLP objective that produced the cut
  std::vector<int> tight_terms;
  bool strengthened = false;
};

/// alpha' x >= beta in the standardized space of the instance it came from.
struct Cut {
  Vector alpha;
  double beta = 0.0;
  CutProvenance provenance;

  double activity(const Vector& x) const { return alpha.dot(x); }
  /// beta - alpha' x (positive when x violates the cut).
  double violation(const Vector& x) const { return beta - alpha.dot(x); }
};

/// Scale so that max |alpha_j| = 1. Zero cuts are returned unchanged.
Cut normalized(Cut cut);

/// Point rows alpha'(p - xbar) >= 1 and ray rows alpha' r >= 0, alpha free.
struct Prlp {
  Vector xbar;
  std::vector<Vector> points; ///< translated, p - xbar
  std::vector<Vector> rays;
  std::vector<std::vector<int>> point_terms;
  LpProblem lp;

  std::size_t num_vars() const { return static_cast<std::size_t>(xbar.size()); }
  std::size_t num_rows() const { return points.size() + rays.size(); }
};

/// Throws NotSeparable when no alpha satisfies the rows.
Prlp build_prlp(const PointRayCollection& collection, const Vector& xbar);

struct HarvestContext {
  std::vector<double> objective; ///< instance objective, orders the point objectives
  std::vector<int> fractional;   ///< fractional integer variables at xbar
  double min_violation = 1e-7;
  double feas_tol = 1e-7;
};

/// Cycle PRLP objectives (each point p by ascending c'p, then +/- e_j for the
/// fractional integer variables) and keep up to `limit` distinct separating
/// cuts with beta = 1 + alpha' xbar before normalization.
std::vector<Cut> harvest_cuts(const Prlp& prlp, std::size_t limit, const HarvestContext& context);

/// Cosine similarity of (alpha, beta) above 1 - tol.
bool same_cut(const Cut& a, const Cut& b, double tol = 1e-9);

} // namespace vpcforge
