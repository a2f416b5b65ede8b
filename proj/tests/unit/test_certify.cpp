#include <doctest.h>

#include "oracles.hpp"
#include "vpcforge/certify.hpp"

#include <random>

using namespace vpcforge;

namespace {

struct Example {
  Instance inst = standardize(load_instance(VPCFORGE_DATA_DIR "/instances/example1.json"));
  Disjunction d = make_disjunction(inst, {{{0, Sense::Le, 0}}, {{0, Sense::Ge, 1}}});
  TermRows rows = term_rows(inst, d.terms[0]);
  Vector p1 = (Vector(3) << 0, 0.5, 0.75).finished();
  Cut cut;
  Example() {
    cut.alpha = (Vector(3) << -0.625, -0.25, -1).finished();
    cut.beta = -0.875;
  }
};

} // namespace

TEST_CASE("supporting constant") {
  Example ex;
  CHECK(supporting_constant(ex.cut, {ex.p1}) == -0.875);
  Cut e;
  e.alpha = Vector::Ones(3);
  CHECK(supporting_constant(e, {Vector::Zero(3)}) == 0.0);
  Cut u;
  u.alpha = Vector::Ones(1);
  CHECK(supporting_constant(u, {Vector::Constant(1, 1.0), Vector::Constant(1, 0.25)}) == 0.25);
}

TEST_CASE("certificate on the certifying cobasis") {
  Example ex;
  const BasisCone cone = basis_cone_from_rows(ex.rows, 0, ex.p1, {2, 3, 5});
  const Vector v = recover_certificate(ex.cut, cone);
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v[2] == doctest::Approx(1.25).epsilon(1e-12));

  const TermCertificate tc = split_certificate(v, cone, ex.rows);
  CHECK(tc.u[2] == doctest::Approx(1.0));
  CHECK(tc.u[3] == doctest::Approx(0.25));
  CHECK(tc.u0[0] == doctest::Approx(1.25));
  CHECK(tc.u_hat.cwiseAbs().maxCoeff() == 0.0);
  const auto [ra, rb] = certificate_residuals(tc, ex.rows, ex.cut);
  CHECK(ra <= 1e-9);
  CHECK(rb <= 1e-9);

  const ExactCheck exact = verify_exact(ex.cut, cone, v);
  REQUIRE(exact.ok());
  CHECK(exact.v[0] == oracle::Rat(1));
  CHECK(exact.v[1] == oracle::Rat(1, 4));
  CHECK(exact.v[2] == oracle::Rat(5, 4));
  CHECK(exact.beta_t == oracle::Rat(-7, 8));
}

TEST_CASE("independent rational solve agrees") {
  Example ex;
  std::vector<std::vector<oracle::Rat>> m;
  for (int r : {2, 3, 5}) {
    std::vector<oracle::Rat> row(3, 0);
    const SparseRow& sr = ex.rows.lp.rows[r];
    for (std::size_t k = 0; k < sr.size(); ++k) row[sr.index[k]] = oracle::exact(sr.value[k]);
    m.push_back(row);
  }
  const auto v = oracle::left_solve(m, {oracle::Rat(-5, 8), oracle::Rat(-1, 4), oracle::Rat(-1)});
  REQUIRE(v);
  CHECK((*v)[0] == 1);
  CHECK((*v)[1] == oracle::Rat(1, 4));
  CHECK((*v)[2] == oracle::Rat(5, 4));
}

TEST_CASE("wrong cobasis is rejected") {
  Example ex;
  const BasisCone cone = basis_cone_from_rows(ex.rows, 0, ex.p1, {1, 2, 5});
  CHECK_THROWS_AS(recover_certificate(ex.cut, cone), Error);
  const Vector v = cone.matrix.transpose().fullPivLu().solve(ex.cut.alpha);
  CHECK(v.minCoeff() == doctest::Approx(-0.25));
}

TEST_CASE("cobasis search finds the certifying cone") {
  Example ex;
  const BasisCone bad = basis_cone_from_rows(ex.rows, 0, ex.p1, {1, 2, 5});
  int tried = 0;
  const BasisCone good = select_term_vertex(ex.cut, bad, ex.rows, {}, &tried);
  CHECK(good.cobasis == std::vector<int>{2, 3, 5});
  CHECK(tried >= 2);

  const BasisCone stored = basis_cone_from_rows(ex.rows, 0, ex.p1, {2, 3, 5});
  CHECK(select_term_vertex(ex.cut, stored, ex.rows).cobasis == stored.cobasis);
}

TEST_CASE("identity cone gives the cut itself") {
  Example ex;
  TermRows rows = term_rows(ex.inst, DisjunctionTerm{});
  const BasisCone c = basis_cone_from_rows(rows, 0, Vector::Zero(3), {5, 6, 7});
  Cut cut;
  cut.alpha = Vector::Unit(3, 0);
  const Vector v = recover_certificate(cut, c);
  CHECK((v - Vector::Unit(3, 0)).norm() == 0.0);
  const TermCertificate tc = split_certificate(v, c, rows);
  CHECK(tc.u.cwiseAbs().sum() == 0.0);
  CHECK(tc.u0.size() == 0);
  CHECK((tc.u_hat - v).norm() == 0.0);
}

TEST_CASE("full certificate of the example cut") {
  Example ex;
  std::vector<BasisCone> cones;
  std::vector<TermRows> rows;
  for (const auto& t : ex.d.terms) {
    cones.push_back(term_basis_cone(ex.inst, t));
    rows.push_back(term_rows(ex.inst, t));
  }
  const PointRayCollection pr = assemble_collection(cones);
  const FarkasCertificate fc = certify_cut(ex.cut, pr, rows);
  REQUIRE(fc.terms[0].has_value());
  CHECK(fc.terms[0]->cobasis == std::vector<int>{2, 3, 5});
  CHECK(fc.terms[0]->exact_ok);
}

TEST_CASE("random cones reconstruct the cut") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    Instance inst;
    inst.lp.objective.assign(n, 0.0);
    inst.lp.bounds.assign(n, VarBound{0.0, kInf});
    inst.integer.assign(n, false);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      SparseRow r;
      for (int j = 0; j < n; ++j) {
        a(i, j) = coef(rng);
        if (a(i, j) != 0) r.push(j, a(i, j));
      }
      r.rhs = coef(rng);
      inst.lp.rows.push_back(r);
    }
    if (std::abs(a.determinant()) < 1e-6) continue;
    const TermRows rows = term_rows(inst, DisjunctionTerm{});
    std::vector<int> cob(n);
    for (int i = 0; i < n; ++i) cob[i] = i;
    Vector b(n);
    for (int i = 0; i < n; ++i) b[i] = inst.lp.rows[i].rhs;
    const Vector vertex = a.fullPivLu().solve(b);
    const BasisCone cone = basis_cone_from_rows(rows, 0, vertex, cob);
    // Any nonnegative combination of the cobasis rows is valid for the cone.
    Vector w(n);
    for (int i = 0; i < n; ++i) w[i] = std::abs(coef(rng));
    Cut cut;
    cut.alpha = a.transpose() * w;
    cut.beta = w.dot(b);
    const Vector v = recover_certificate(cut, cone);
    CHECK((a.transpose() * v - cut.alpha).cwiseAbs().maxCoeff() <= 1e-9 * (1 + cut.alpha.cwiseAbs().maxCoeff()));
    CHECK(v.minCoeff() >= -1e-9);
    ++checked;
  }
  CHECK(checked > 100);
}
