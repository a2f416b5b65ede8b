#include <doctest.h>

#include "vpcforge/lp.hpp"

#include <cmath>

using namespace vpcforge;

namespace {

// min -x1 - x2  s.t.  2x1 + 2x2 <= 3,  x in [0,1]^2
LpProblem toy_k() {
  LpProblem p;
  p.objective = {-1.0, -1.0};
  SparseRow r;
  r.push(0, 2.0);
  r.push(1, 2.0);
  r.sense = Sense::Le;
  r.rhs = 3.0;
  p.rows.push_back(r);
  p.bounds = {{0.0, 1.0}, {0.0, 1.0}};
  return p;
}

SparseRow ge(std::vector<std::pair<int, double>> coefs, double rhs) {
  SparseRow r;
  for (auto [j, v] : coefs) r.push(j, v);
  r.rhs = rhs;
  return r;
}

// Example polyhedron with -x1 >= 0 appended, objective (-5/8, -1/4, -1).
LpProblem example_term() {
  LpProblem p;
  p.objective = {-5.0 / 8, -0.25, -1.0};
  p.rows.push_back(ge({{0, -13.0 / 8}, {1, -0.25}, {2, -1.0}}, -15.0 / 8));
  p.rows.push_back(ge({{0, 0.5}, {1, 1.0}}, 0.5));
  p.rows.push_back(ge({{0, 0.5}, {2, -1.0}}, -0.75));
  p.rows.push_back(ge({{0, 0.5}, {1, -1.0}}, -0.5));
  p.rows.push_back(ge({{1, 1.0}}, 0.0));
  p.rows.push_back(ge({{0, -1.0}}, 0.0));
  p.bounds.assign(3, VarBound{});
  return p;
}

double residual(const TableauRow& row, const LpSolution& s, const LpProblem& p, int basic) {
  const int n = static_cast<int>(p.num_vars());
  auto value = [&](int id) { return id < n ? s.x[id] : s.slacks[id - n]; };
  double acc = row.rhs;
  for (auto [id, c] : row.coefs) {
    const VarBound b = variable_bounds(p, id);
    double shifted = value(id);
    if (s.basis.state[id] == VarState::AtLower) shifted -= b.lo;
    else if (s.basis.state[id] == VarState::AtUpper) shifted = b.hi - value(id);
    acc -= c * shifted;
  }
  return std::abs(acc - value(basic));
}

} // namespace

TEST_CASE("toy-k relaxation optimum") {
  const LpProblem p = toy_k();
  const LpSolution s = solve_lp(p);
  REQUIRE(s.optimal());
  CHECK(s.obj == doctest::Approx(-1.5).epsilon(1e-12));
  const bool first = std::abs(s.x[0] - 1.0) < 1e-9 && std::abs(s.x[1] - 0.5) < 1e-9;
  const bool second = std::abs(s.x[0] - 0.5) < 1e-9 && std::abs(s.x[1] - 1.0) < 1e-9;
  CHECK((first || second));
  CHECK(p.max_violation(s.x) <= 1e-9);
}

TEST_CASE("example term optimum at (0, 1/2, 3/4)") {
  const LpProblem p = example_term();
  const LpSolution s = solve_lp(p);
  REQUIRE(s.optimal());
  CHECK(s.obj == doctest::Approx(-7.0 / 8).epsilon(1e-12));
  CHECK(std::abs(s.x[0]) < 1e-9);
  CHECK(std::abs(s.x[1] - 0.5) < 1e-9);
  CHECK(std::abs(s.x[2] - 0.75) < 1e-9);
}

TEST_CASE("empty box is infeasible") {
  LpProblem p;
  p.objective = {0.0};
  p.bounds = {VarBound{-kInf, kInf}};
  p.rows.push_back(ge({{0, 1.0}}, 1.0));
  p.rows.push_back(ge({{0, -1.0}}, 0.0));
  CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray is detected") {
  LpProblem p;
  p.objective = {-1.0, 0.0};
  p.bounds.assign(2, VarBound{});
  p.rows.push_back(ge({{0, 1.0}, {1, -1.0}}, 0.0));
  CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("tableau row of toy-k") {
  const LpProblem p = toy_k();
  const LpSolution s = solve_lp(p);
  REQUIRE(s.optimal());
  const int basic = std::abs(s.x[0] - 0.5) < 1e-9 ? 0 : 1;
  const int other = 1 - basic;
  const TableauRow row = tableau_row(s, p, basic);
  CHECK(row.rhs == doctest::Approx(0.5));
  double slack_coef = 0.0, bound_coef = 0.0;
  for (auto [id, c] : row.coefs) {
    if (id == 2) slack_coef = c;
    if (id == other) bound_coef = c;
  }
  // Logical s = 2x1 + 2x2 - 3 sits at its upper bound 0; shifted value -s.
  CHECK(std::abs(slack_coef) == doctest::Approx(0.5));
  CHECK(bound_coef == doctest::Approx(-1.0));
  CHECK(residual(row, s, p, basic) < 1e-9);
}

TEST_CASE("tableau row of a single bound row") {
  LpProblem p;
  p.objective = {1.0};
  p.bounds = {VarBound{}};
  p.rows.push_back(ge({{0, 1.0}}, 0.3));
  const LpSolution s = solve_lp(p);
  REQUIRE(s.optimal());
  REQUIRE(s.is_basic(0));
  const TableauRow row = tableau_row(s, p, 0);
  CHECK(row.rhs == doctest::Approx(0.3));
  REQUIRE(row.coefs.size() == 1);
  CHECK(row.coefs[0].first == 1);
  CHECK(row.coefs[0].second == doctest::Approx(-1.0));
  CHECK(residual(row, s, p, 0) < 1e-12);
}

TEST_CASE("tableau row of a nonbasic variable throws") {
  const LpProblem p = toy_k();
  const LpSolution s = solve_lp(p);
  const int nonbasic = s.is_basic(0) ? (s.is_basic(1) ? 2 : 1) : 0;
  try {
    tableau_row(s, p, nonbasic);
    FAIL("expected NotBasic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBasic);
  }
}

TEST_CASE("solves are deterministic and warm starts agree") {
  const LpProblem p = example_term();
  const LpSolution a = solve_lp(p);
  const LpSolution b = solve_lp(p);
  CHECK(a.basis.basic == b.basis.basic);
  CHECK(a.basis.state == b.basis.state);
  LpProblem q = p;
  q.objective = {1.0, 1.0, 1.0};
  const LpSolution c = solve_lp(q, &a.basis);
  const LpSolution d = solve_lp(q);
  REQUIRE(c.optimal());
  CHECK(c.obj == doctest::Approx(d.obj).epsilon(1e-10));
}

TEST_CASE("random feasible LPs satisfy optimality conditions") {
  std::uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(next() * 6);
    const int m = 1 + static_cast<int>(next() * 8);
    LpProblem p;
    p.objective.resize(n);
    for (auto& c : p.objective) c = std::round((next() * 10 - 5));
    p.bounds.assign(n, VarBound{0.0, 1.0 + std::floor(next() * 4)});
    for (int i = 0; i < m; ++i) {
      SparseRow r;
      for (int j = 0; j < n; ++j)
        if (next() < 0.7) r.push(j, std::round(next() * 8 - 4));
      r.sense = next() < 0.5 ? Sense::Ge : Sense::Le;
      r.rhs = r.sense == Sense::Ge ? -std::floor(next() * 4) : std::floor(next() * 4);
      p.rows.push_back(r);
    }
    const LpSolution s = solve_lp(p);
    REQUIRE(s.optimal()); // origin is feasible
    CHECK(p.max_violation(s.x) <= 1e-7);
    // Dual feasibility: reduced costs sign-consistent with nonbasic states.
    for (int j = 0; j < n; ++j) {
      if (s.basis.state[j] == VarState::AtLower) CHECK(s.reduced_costs[j] >= -1e-7);
      if (s.basis.state[j] == VarState::AtUpper) CHECK(s.reduced_costs[j] <= 1e-7);
    }
    double yb = 0.0;
    for (int i = 0; i < m; ++i) yb += s.duals[i] * p.rows[i].rhs;
    double bound_part = 0.0;
    for (int j = 0; j < n; ++j) {
      const double rc = s.reduced_costs[j];
      bound_part += rc > 0 ? rc * p.bounds[j].lo : rc * p.bounds[j].hi;
    }
    CHECK(std::abs(yb + bound_part - s.obj) <= 1e-6 * (1 + std::abs(s.obj)));
  }
}
