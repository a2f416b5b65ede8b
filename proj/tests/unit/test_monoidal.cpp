#include <doctest.h>

#include "oracles.hpp"
#include "vpcforge/monoidal.hpp"

#include <random>

using namespace vpcforge;

TEST_CASE("two-term monoid from the worked numbers") {
  const MonoidSolution s = solve_monoid({{1, 1}, {1.2, 0.1}});
  CHECK(s.z == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(s.m == std::vector<long long>{1, -1});
  const auto box = oracle::monoid_box({1, 1}, {1.2, 0.1}, 3);
  CHECK(box.z == doctest::Approx(s.z));
}

TEST_CASE("zero slack gives zero") {
  for (auto d : {std::vector<double>{0, 0}, {1, 3}, {0, 2, 5}}) {
    const MonoidSolution s = solve_monoid({d, std::vector<double>(d.size(), 0.0)});
    CHECK(s.z == 0.0);
    for (auto m : s.m) CHECK(m == 0);
  }
}

TEST_CASE("a zero d absorbs the sum") {
  const MonoidSolution s = solve_monoid({{1, 0}, {0.5, 0.3}});
  CHECK(s.z == doctest::Approx(-0.3));
  CHECK(monoid_objective({{1, 0}, {0.5, 0.3}}, s.m) == doctest::Approx(s.z));
  long long sum = 0;
  for (auto m : s.m) sum += m;
  CHECK(sum >= 0);
}

TEST_CASE("solver agrees with box enumeration and the rational replay") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> eighths(0, 24);
  std::uniform_int_distribution<int> terms(1, 4);
  int exact_matches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int t = terms(rng);
    MonoidInstance mi;
    std::vector<Rational> dr, sr;
    for (int i = 0; i < t; ++i) {
      const int dk = eighths(rng) % 5 == 0 ? 0 : 1 + eighths(rng);
      const int sk = eighths(rng);
      mi.d.push_back(dk / 8.0);
      mi.s.push_back(sk / 8.0);
      dr.emplace_back(dk, 8);
      sr.emplace_back(sk, 8);
    }
    const MonoidSolution s = solve_monoid(mi);
    long long sum = 0;
    for (auto m : s.m) sum += m;
    REQUIRE(sum >= 0);
    CHECK(monoid_objective(mi, s.m) == doctest::Approx(s.z).epsilon(1e-12));
    const auto box = oracle::monoid_box(mi.d, mi.s, 5);
    CHECK(s.z <= box.z + 1e-9);
    const auto [zr, mr] = solve_monoid_exact(dr, sr);
    CHECK(std::abs(s.z - static_cast<double>(zr)) <= 1e-9);
    if (std::abs(box.z - s.z) <= 1e-9) ++exact_matches;
  }
  CHECK(exact_matches > 400);
}

TEST_CASE("lower bounds of the knapsack branching rows") {
  const Instance inst = standardize(load_instance(VPCFORGE_DATA_DIR "/instances/toy-k.json"));
  DisjunctionTerm up;
  up.bound_changes = {{0, Sense::Ge, 1}};
  const TermBounds a = term_lower_bounds(inst, up);
  CHECK(a.lower[0] == 0.0);
  CHECK(a.delta[0] == 1.0);
  CHECK(a.finite[0]);
  DisjunctionTerm down;
  down.bound_changes = {{0, Sense::Le, 0}};
  const TermBounds b = term_lower_bounds(inst, down);
  CHECK(b.lower[0] == -1.0);
  CHECK(b.delta[0] == 1.0);
}

TEST_CASE("unbounded integer row has no finite delta") {
  Instance inst = standardize(load_instance(VPCFORGE_DATA_DIR "/instances/example1.json"));
  DisjunctionTerm down;
  down.bound_changes = {{0, Sense::Le, 0}};
  // x1 is bounded above by the rows, so drop them.
  inst.lp.rows.clear();
  inst.row_names.clear();
  const TermBounds b = term_lower_bounds(inst, down);
  CHECK_FALSE(b.finite[0]);
}

namespace {

FarkasCertificate synthetic(double s1, double s2) {
  FarkasCertificate fc;
  for (double s : {s1, s2}) {
    TermCertificate tc;
    tc.u0 = Vector::Ones(1);
    tc.u_hat = Vector::Constant(1, s);
    tc.u = Vector::Zero(0);
    fc.terms.emplace_back(tc);
  }
  return fc;
}

Instance one_integer() {
  Instance inst;
  inst.lp.objective = {1.0};
  inst.lp.bounds = {VarBound{0.0, 5.0}};
  inst.integer = {true};
  return inst;
}

} // namespace

TEST_CASE("strengthening arithmetic") {
  const Instance inst = one_integer();
  TermBounds tb{{0.0}, {1.0}, {true}};
  Cut cut;
  cut.alpha = Vector::Constant(1, 2.0);
  cut.beta = 1.0;
  const StrengthenResult r = strengthen_cut(cut, synthetic(1.2, 0.1), {tb, tb}, inst);
  CHECK(r.cut.alpha[0] == doctest::Approx(1.8));
  CHECK(r.strengthened_coefficients == 1);
  CHECK(r.cut.provenance.strengthened);
  CHECK(r.cut.beta == cut.beta);

  const StrengthenResult z = strengthen_cut(cut, synthetic(0.0, 0.0), {tb, tb}, inst);
  CHECK(z.cut.alpha[0] == cut.alpha[0]);
  CHECK_FALSE(z.cut.provenance.strengthened);
}

TEST_CASE("missing certificate or infinite delta skips") {
  const Instance inst = one_integer();
  Cut cut;
  cut.alpha = Vector::Constant(1, 2.0);
  FarkasCertificate fc = synthetic(1.2, 0.1);
  fc.terms[1].reset();
  TermBounds tb{{0.0}, {1.0}, {true}};
  const StrengthenResult a = strengthen_cut(cut, fc, {tb, tb}, inst);
  CHECK(a.skipped_coefficients == 1);
  CHECK(a.cut.alpha[0] == 2.0);
  TermBounds inf{{-kInf}, {kInf}, {false}};
  const StrengthenResult b = strengthen_cut(cut, synthetic(1.2, 0.1), {tb, inf}, inst);
  CHECK(b.skipped_coefficients == 1);
  CHECK(b.cut.alpha[0] == 2.0);
}
