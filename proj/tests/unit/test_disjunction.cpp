#include <doctest.h>

#include "oracles.hpp"
#include "vpcforge/collector.hpp"

#include <algorithm>
#include <cmath>

using namespace vpcforge;

namespace {

Instance toy() { return standardize(load_instance(VPCFORGE_DATA_DIR "/instances/toy-k.json")); }
Instance example() { return standardize(load_instance(VPCFORGE_DATA_DIR "/instances/example1.json")); }

bool has_point(const std::vector<Vector>& pts, std::vector<double> p) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vector& v) {
    return (v - Eigen::Map<Vector>(p.data(), static_cast<Eigen::Index>(p.size()))).cwiseAbs().maxCoeff() < 1e-9;
  });
}

} // namespace

TEST_CASE("two-leaf tree branches by the rule") {
  const Instance inst = toy();
  const LpSolution root = solve_lp(inst.lp);
  const Disjunction d = build_partial_tree(inst, 2);
  REQUIRE(d.terms.size() == 2);
  REQUIRE(d.tree_log.size() == 2);
  // Most fractional integer variable at the root, ties to the lowest index.
  int expect = -1;
  double best = 0.0;
  for (int j : inst.integer_vars())
    if (fractionality(root.x[j]) > best + 1e-12) best = fractionality(root.x[j]), expect = j;
  CHECK(d.tree_log[0].var == expect);
  for (const auto& t : d.terms) {
    REQUIRE(t.bound_changes.size() == 1);
    CHECK(t.bound_changes[0].var == expect);
  }
}

TEST_CASE("four-leaf target on the knapsack toy") {
  const Disjunction d = build_partial_tree(toy(), 4);
  CHECK(d.terms.size() <= 4);
  CHECK(d.terms.size() >= 2);
  for (const auto& t : d.terms) CHECK(t.leaf_lp.optimal());
}

TEST_CASE("disjunction covers every integer point") {
  const Instance inst = toy();
  for (int target : {2, 4, 8}) {
    const Disjunction d = build_partial_tree(inst, target);
    oracle::lattice_points({0, 0}, {1, 1}, {{-2, -2}}, {-3}, [&](const std::vector<double>& x) {
      const Vector v = Eigen::Map<const Vector>(x.data(), 2);
      const bool covered =
          std::any_of(d.terms.begin(), d.terms.end(), [&](const auto& t) { return t.contains(v); });
      CHECK(covered);
    });
  }
}

TEST_CASE("integral root is rejected") {
  Instance inst = toy();
  inst.lp.rows[0].rhs = -2.0;
  CHECK_THROWS_AS(build_partial_tree(inst, 2), Error);
  try {
    build_partial_tree(inst, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFractional);
  }
}

TEST_CASE("full enumeration drops the infeasible leaf") {
  const Instance inst = toy();
  const Disjunction d = make_disjunction(
      inst, {{{0, Sense::Le, 0}, {1, Sense::Le, 0}},
             {{0, Sense::Le, 0}, {1, Sense::Ge, 1}},
             {{0, Sense::Ge, 1}, {1, Sense::Le, 0}},
             {{0, Sense::Ge, 1}, {1, Sense::Ge, 1}}});
  CHECK(d.terms.size() == 3);
  CHECK(d.pruned == 1);
}

TEST_CASE("term polyhedron row counts") {
  const Instance inst = example();
  DisjunctionTerm t;
  t.bound_changes = {{0, Sense::Le, 0}};
  CHECK(term_polyhedron(inst, t).rows.size() == 5 + 1 + 3);
  CHECK(term_polyhedron(inst, DisjunctionTerm{}).rows.size() == 5 + 3);

  DisjunctionTerm up;
  up.bound_changes = {{0, Sense::Ge, 1}};
  const LpSolution s = solve_lp(leaf_problem(toy(), up.bound_changes));
  REQUIRE(s.optimal());
  CHECK(s.obj == doctest::Approx(-1.5));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(0.5));
}

TEST_CASE("degenerate vertex of the example term") {
  const Instance inst = example();
  const Disjunction d = make_disjunction(inst, {{{0, Sense::Le, 0}}, {{0, Sense::Ge, 1}}});
  REQUIRE(d.terms.size() == 2);
  const BasisCone c = term_basis_cone(inst, d.terms[0]);
  CHECK(c.vertex[0] == doctest::Approx(0.0));
  CHECK(c.vertex[1] == doctest::Approx(0.5));
  CHECK(c.vertex[2] == doctest::Approx(0.75));
  CHECK(c.degenerate);
  CHECK(c.num_tight > 3);
  CHECK(c.rays.size() == 3);
}

TEST_CASE("rays of the certifying cobasis") {
  const Instance inst = example();
  DisjunctionTerm t;
  t.bound_changes = {{0, Sense::Le, 0}};
  const TermRows rows = term_rows(inst, t);
  REQUIRE(rows.size() == 9);
  CHECK(rows.row_class[5] == RowClass::Disjunction);
  CHECK(rows.row_class[6] == RowClass::VarBound);
  Vector p(3);
  p << 0, 0.5, 0.75;
  const BasisCone c = basis_cone_from_rows(rows, 0, p, {2, 3, 5});
  const double expect[3][3] = {{0, 0, -1}, {0, -1, 0}, {-1, -0.5, -0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(c.rays[i][j] == doctest::Approx(expect[i][j]).epsilon(1e-12));
  CHECK_THROWS_AS(basis_cone_from_rows(rows, 0, p, {5, 6, 7}), Error);
}

TEST_CASE("simple vertex on the knapsack term") {
  const Instance inst = toy();
  DisjunctionTerm t;
  t.bound_changes = {{0, Sense::Ge, 1}};
  const Disjunction d = make_disjunction(inst, {t.bound_changes});
  const BasisCone c = term_basis_cone(inst, d.terms[0]);
  CHECK(c.vertex[0] == doctest::Approx(1.0));
  CHECK(c.vertex[1] == doctest::Approx(0.5));
  CHECK(c.rays.size() == 2);
  // The knapsack row and the branching row form the cobasis.
  const TermRows rows = term_rows(inst, d.terms[0]);
  bool has_d = false, has_k = false;
  for (std::size_t i = 0; i < c.cobasis.size(); ++i) {
    has_d |= c.row_class[i] == RowClass::Disjunction;
    has_k |= c.cobasis[i] == 0;
  }
  CHECK(has_d);
  CHECK(has_k);
}

TEST_CASE("collection counting and dedup") {
  const Instance inst = toy();
  const Disjunction d = make_disjunction(
      inst, {{{0, Sense::Le, 0}, {1, Sense::Le, 0}},
             {{0, Sense::Le, 0}, {1, Sense::Ge, 1}},
             {{0, Sense::Ge, 1}, {1, Sense::Le, 0}}});
  std::vector<BasisCone> cones;
  for (const auto& t : d.terms) cones.push_back(term_basis_cone(inst, t));
  const PointRayCollection pr = assemble_collection(cones);
  CHECK(pr.points.size() == 3);
  CHECK(has_point(pr.points, {0, 0}));
  CHECK(has_point(pr.points, {0, 1}));
  CHECK(has_point(pr.points, {1, 0}));
  CHECK(pr.rays.size() <= 6);

  const PointRayCollection twins = assemble_collection({cones[0], cones[0]});
  CHECK(twins.points.size() == 1);
  CHECK(twins.rays.size() == 2);
}

TEST_CASE("integer points lie in some basis cone") {
  const Instance inst = toy();
  for (int target : {2, 4}) {
    const Disjunction d = build_partial_tree(inst, target);
    std::vector<BasisCone> cones;
    for (const auto& t : d.terms) cones.push_back(term_basis_cone(inst, t));
    oracle::lattice_points({0, 0}, {1, 1}, {{-2, -2}}, {-3}, [&](const std::vector<double>& x) {
      const Vector v = Eigen::Map<const Vector>(x.data(), 2);
      bool inside = false;
      for (const auto& c : cones) {
        // x = p + sum s_i r^i with s = A_N (x - p).
        const Vector s = c.matrix * (v - c.vertex);
        inside |= s.minCoeff() >= -1e-7;
      }
      CHECK(inside);
    });
  }
}
