#include <doctest.h>

#include "vpcforge/instance.hpp"

#include <cmath>

using namespace vpcforge;

namespace {

const char* kToyK = R"({
  "format": "vpc-forge-instance", "version": 1, "name": "toy-k", "sense": "min",
  "variables": [
    {"name": "x1", "lo": 0, "hi": 1, "integer": true},
    {"name": "x2", "lo": 0, "hi": 1, "integer": true}],
  "objective": [-1, -1],
  "rows": [{"name": "k", "coefs": [[0, 2], [1, 2]], "sense": "<=", "rhs": 3}]
})";

} // namespace

TEST_CASE("native json of the example polyhedron") {
  const Instance inst = load_instance(VPCFORGE_DATA_DIR "/instances/example1.json");
  CHECK(inst.num_rows() == 5);
  CHECK(inst.num_vars() == 3);
  CHECK(inst.integer_vars() == std::vector<int>{0});
}

TEST_CASE("native json round trip") {
  const Instance a = parse_instance(kToyK, InstanceFormat::NativeJson);
  const std::string text = serialize_instance(a);
  const Instance b = parse_instance(text, InstanceFormat::NativeJson);
  CHECK(serialize_instance(b) == text);
  CHECK(b.lp.rows[0].sense == Sense::Le);
  CHECK(b.lp.bounds[1].hi == 1.0);

  const Instance s = standardize(a);
  const Instance t = parse_instance(serialize_instance(s), InstanceFormat::NativeJson);
  CHECK(t.standardized);
  CHECK(serialize_instance(t) == serialize_instance(s));
}

TEST_CASE("json syntax errors carry a position") {
  try {
    parse_instance("{\n  \"format\": ,\n}", InstanceFormat::NativeJson);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("mps subset") {
  const char* text =
      "NAME          tiny\n"
      "ROWS\n"
      " N  obj\n"
      " L  c1\n"
      " G  c2\n"
      " E  c3\n"
      "COLUMNS\n"
      "    MARKER                 'MARKER'                 'INTORG'\n"
      "    x1        obj       -1.0         c1        2.0\n"
      "    x1        c3         1.0\n"
      "    MARKER                 'MARKER'                 'INTEND'\n"
      "    y         obj        1.0         c2        1.0\n"
      "    y         c1         1.0\n"
      "RHS\n"
      "    RHS       c1         4.0         c2        0.5\n"
      "    RHS       c3         1.0\n"
      "RANGES\n"
      "    RNG       c2         2.0\n"
      "BOUNDS\n"
      " UP BND       x1         3\n"
      " MI BND       y\n"
      "ENDATA\n";
  const Instance inst = parse_instance(text, InstanceFormat::Mps);
  CHECK(inst.name == "tiny");
  REQUIRE(inst.num_vars() == 2);
  CHECK(inst.integer == std::vector<bool>{true, false});
  CHECK(inst.lp.objective == std::vector<double>{-1.0, 1.0});
  REQUIRE(inst.num_rows() == 4); // c2 ranged into two rows
  CHECK(inst.lp.rows[1].sense == Sense::Ge);
  CHECK(inst.lp.rows[1].rhs == 0.5);
  CHECK(inst.lp.rows[2].sense == Sense::Le);
  CHECK(inst.lp.rows[2].rhs == 2.5);
  CHECK(inst.lp.rows[3].sense == Sense::Eq);
  CHECK(inst.lp.bounds[0].hi == 3.0);
  CHECK(inst.lp.bounds[1].lo == -kInf);
}

TEST_CASE("mps with empty COLUMNS") {
  const Instance inst =
      parse_instance("NAME empty\nROWS\n N obj\nCOLUMNS\nRHS\nENDATA\n", InstanceFormat::Mps);
  CHECK(inst.num_vars() == 0);
}

TEST_CASE("mps SOS section is unsupported") {
  try {
    parse_instance("NAME s\nROWS\n N obj\nCOLUMNS\nSOS\n S1 SOS s1 1\nENDATA\n", InstanceFormat::Mps);
    FAIL("expected UnsupportedFeature");
  } catch (const ParseError&) {
    FAIL("wrong error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFeature);
  }
}

TEST_CASE("mps parse error position") {
  try {
    parse_instance("NAME s\nROWS\n N obj\n L c1\nCOLUMNS\n    x c1 abc\nENDATA\n", InstanceFormat::Mps);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.column() == 10);
  }
}

TEST_CASE("standardize flips, shifts and splits") {
  Instance raw;
  raw.lp.objective = {1.0, 1.0};
  raw.lp.bounds = {{1.0, 3.0}, {0.0, kInf}};
  raw.integer = {true, false};
  SparseRow le;
  le.push(0, 2.0);
  le.push(1, 2.0);
  le.sense = Sense::Le;
  le.rhs = 3.0;
  SparseRow eq;
  eq.push(1, 1.0);
  eq.sense = Sense::Eq;
  eq.rhs = 0.5;
  raw.lp.rows = {le, eq};
  const Instance s = standardize(raw);
  REQUIRE(s.num_rows() == 3);
  for (const auto& r : s.lp.rows) CHECK(r.sense == Sense::Ge);
  // -2(1 + y1) - 2 y2 >= -3  ->  -2 y1 - 2 y2 >= -1
  CHECK(s.lp.rows[0].value[0] == -2.0);
  CHECK(s.lp.rows[0].rhs == -1.0);
  CHECK(s.lp.rows[1].rhs == 0.5);
  CHECK(s.lp.rows[2].rhs == -0.5);
  CHECK(s.lp.bounds[0].lo == 0.0);
  CHECK(s.lp.bounds[0].hi == 2.0);
  CHECK(s.transform.obj_offset == 1.0);

  const Vector alpha{{0.5, -1.5}};
  const auto [ra, rb] = s.transform.cut_to_raw(alpha, 0.25);
  const auto [sa, sb] = s.transform.cut_to_std(ra, rb);
  CHECK(sa == alpha);
  CHECK(sb == 0.25);
}

TEST_CASE("brute force optimum") {
  const Instance toy = standardize(parse_instance(kToyK, InstanceFormat::NativeJson));
  const IpOptimum opt = brute_force_ip(toy);
  REQUIRE(opt.feasible);
  CHECK(opt.value == -1.0);
  CHECK(std::abs(opt.witness[0] + opt.witness[1] - 1.0) < 1e-12);

  Instance empty = toy;
  SparseRow r;
  r.push(0, 1.0);
  r.push(1, 1.0);
  r.rhs = 2.5;
  empty.lp.rows.push_back(r);
  CHECK(!brute_force_ip(empty).feasible);

  Instance big;
  big.lp.objective.assign(30, 1.0);
  big.lp.bounds.assign(30, VarBound{0.0, 1.0});
  big.integer.assign(30, true);
  try {
    brute_force_ip(big);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("integer optimum never beats the relaxation") {
  const Instance toy = standardize(parse_instance(kToyK, InstanceFormat::NativeJson));
  const LpSolution lp = solve_lp(toy.lp);
  CHECK(brute_force_ip(toy).value >= lp.obj - 1e-7);
}
