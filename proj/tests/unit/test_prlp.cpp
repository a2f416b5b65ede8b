#include <doctest.h>

#include "oracles.hpp"
#include "vpcforge/collector.hpp"
#include "vpcforge/prlp.hpp"

using namespace vpcforge;

namespace {

Instance toy() { return standardize(load_instance(VPCFORGE_DATA_DIR "/instances/toy-k.json")); }

PointRayCollection toy_three_terms(const Instance& inst) {
  const Disjunction d = make_disjunction(
      inst, {{{0, Sense::Le, 0}, {1, Sense::Le, 0}},
             {{0, Sense::Le, 0}, {1, Sense::Ge, 1}},
             {{0, Sense::Ge, 1}, {1, Sense::Le, 0}}});
  std::vector<BasisCone> cones;
  for (const auto& t : d.terms) cones.push_back(term_basis_cone(inst, t));
  return assemble_collection(cones);
}

HarvestContext context(const Instance& inst, const Vector& xbar) {
  HarvestContext ctx;
  ctx.objective = inst.lp.objective;
  ctx.fractional = fractional_integers(inst, xbar);
  return ctx;
}

} // namespace

TEST_CASE("prlp of the three-point collection") {
  const Instance inst = toy();
  const PointRayCollection pr = toy_three_terms(inst);
  const Vector xbar = solve_lp(inst.lp).x;
  const Prlp p = build_prlp(pr, xbar);
  CHECK(p.points.size() == 3);
  CHECK(p.num_vars() == 2);
  CHECK(p.num_rows() == pr.points.size() + pr.rays.size());
}

TEST_CASE("harvest finds the knapsack facet") {
  const Instance inst = toy();
  const PointRayCollection pr = toy_three_terms(inst);
  const Vector xbar = solve_lp(inst.lp).x;
  const auto cuts = harvest_cuts(build_prlp(pr, xbar), 4, context(inst, xbar));
  REQUIRE_FALSE(cuts.empty());
  Cut facet;
  facet.alpha = Vector::Constant(2, -1.0);
  facet.beta = -1.0;
  bool found = false;
  for (const auto& c : cuts) {
    found |= same_cut(c, normalized(facet), 1e-7);
    CHECK(c.violation(xbar) >= 1e-7);
    CHECK(c.alpha.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    for (const auto& q : pr.points) CHECK(c.activity(q) >= c.beta - 1e-7 * (1 + std::abs(c.beta)));
    for (const auto& r : pr.rays) CHECK(c.alpha.dot(r) >= -1e-7);
  }
  CHECK(found);
}

TEST_CASE("limit caps the harvest") {
  const Instance inst = toy();
  const PointRayCollection pr = toy_three_terms(inst);
  const Vector xbar = solve_lp(inst.lp).x;
  CHECK(harvest_cuts(build_prlp(pr, xbar), 1, context(inst, xbar)).size() <= 1);
}

TEST_CASE("single point is supported") {
  const Instance inst = toy();
  const Disjunction d = make_disjunction(inst, {{{0, Sense::Le, 0}, {1, Sense::Le, 0}}});
  PointRayCollection pr = assemble_collection({term_basis_cone(inst, d.terms[0])});
  pr.rays.clear();
  pr.ray_terms.clear();
  const Vector xbar = solve_lp(inst.lp).x;
  const auto cuts = harvest_cuts(build_prlp(pr, xbar), 1, context(inst, xbar));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].activity(pr.points[0]) == doctest::Approx(cuts[0].beta).epsilon(1e-12));
}

TEST_CASE("xbar in the collection is not separable") {
  const Instance inst = toy();
  const Vector xbar = solve_lp(inst.lp).x;
  DisjunctionTerm t;
  t.bound_changes = {{0, Sense::Ge, 1}};
  const Disjunction d = make_disjunction(inst, {t.bound_changes});
  const PointRayCollection pr = assemble_collection({term_basis_cone(inst, d.terms[0])});
  REQUIRE((pr.points[0] - xbar).norm() < 1e-9);
  try {
    build_prlp(pr, xbar);
    FAIL("expected NotSeparable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSeparable);
  }
}

TEST_CASE("example cut lies in the prlp after scaling") {
  const Instance inst = standardize(load_instance(VPCFORGE_DATA_DIR "/instances/example1.json"));
  const Disjunction d = make_disjunction(inst, {{{0, Sense::Le, 0}}, {{0, Sense::Ge, 1}}});
  std::vector<BasisCone> cones;
  for (const auto& t : d.terms) cones.push_back(term_basis_cone(inst, t));
  const PointRayCollection pr = assemble_collection(cones);
  const Vector xbar = solve_lp(inst.lp).x;
  const Prlp p = build_prlp(pr, xbar);
  Vector alpha(3);
  alpha << -0.625, -0.25, -1;
  const double scale = -0.875 - alpha.dot(xbar);
  REQUIRE(scale > 0);
  alpha /= scale;
  for (const auto& q : p.points) CHECK(alpha.dot(q) >= 1 - 1e-9);
  for (const auto& r : p.rays) CHECK(alpha.dot(r) >= -1e-9);
}
