#include <doctest.h>

#include "vpcforge/harness.hpp"

#include <cmath>

using namespace vpcforge;

namespace {

Instance toy_raw() { return load_instance(VPCFORGE_DATA_DIR "/instances/toy-k.json"); }

} // namespace

TEST_CASE("gap closed by the knapsack facet") {
  const Instance inst = standardize(toy_raw());
  Cut facet;
  facet.alpha = Vector::Constant(2, -1.0);
  facet.beta = -1.0;
  CHECK(gap_closed(inst, {facet}, -1.5, -1.0) == doctest::Approx(100.0));
  CHECK(gap_closed(inst, {}, -1.5, -1.0) == 0.0);
  try {
    gap_closed(inst, {}, -1.0, -1.0);
    FAIL("expected ZeroGap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroGap);
  }
}

TEST_CASE("integer optimum from reference and enumeration") {
  Instance inst = standardize(toy_raw());
  CHECK(integer_optimum(inst) == -1.0);
  inst.reference = {};
  CHECK(integer_optimum(inst) == -1.0);
}

TEST_CASE("verifier flags an invalid cut") {
  const Instance inst = standardize(toy_raw());
  Cut bad;
  bad.alpha = Vector::Constant(2, -1.0);
  bad.beta = -0.5;
  Cut good = bad;
  good.beta = -1.0;
  const auto v = verify_cuts(inst, nullptr, {bad, good});
  CHECK_FALSE(v[0].valid_pi);
  CHECK(v[0].worst_pi == doctest::Approx(0.5));
  CHECK(v[1].valid_pi);
}

TEST_CASE("pipeline on the knapsack toy") {
  PipelineRun run = prepare_pipeline(standardize(toy_raw()));
  CHECK(run.root.obj == doctest::Approx(-1.5));
  CHECK(run.gmics.size() == 1);
  run_disjunctive_stage(run, 2);
  REQUIRE_FALSE(run.vpcs.empty());
  CHECK(run.certificates.size() == run.vpcs.size());
  const auto verdicts = verify_cuts(run.instance, &run.collection, run.vpcs);
  for (const auto& v : verdicts) {
    CHECK(v.valid_pi);
    CHECK(v.valid_pd);
  }
  for (const auto& v : verify_cuts(run.instance, nullptr, run.strengthened_cuts())) CHECK(v.valid_pi);
}

TEST_CASE("sweep report on the toy") {
  ExperimentConfig cfg;
  cfg.leaf_counts = {2, 4};
  const EvalReport r = run_experiment({{"toy-k", toy_raw(), ""}}, cfg);
  REQUIRE(r.instances.size() == 1);
  CHECK(r.instances[0].ok());
  CHECK(r.instances[0].leaves.size() == 2);
  REQUIRE(r.sets.size() == 2);
  CHECK(r.sets[0].rows.size() == 3);
  CHECK(r.sets[0].rows.back().label == "Best");
  for (const auto& lr : r.instances[0].leaves) {
    CHECK(lr.gap[2] >= lr.gap[1] - 1e-6);
    CHECK(lr.gap[4] >= lr.gap[3] - 1e-6);
    CHECK(lr.gap[3] >= std::max(lr.gap[0], lr.gap[1]) - 1e-6);
    CHECK(lr.gap[1] <= lr.disjunctive_gap + 1e-6);
    for (int c = 0; c < 5; ++c) CHECK(r.instances[0].best[c] >= lr.gap[c]);
  }
  const std::string table = report_table(r);
  CHECK(table.find("Wins") != std::string::npos);
  CHECK(table.find("G+V+") != std::string::npos);
  CHECK(report_csv(r) == report_csv(run_experiment({{"toy-k", toy_raw(), ""}}, cfg)));
}

TEST_CASE("failures are isolated") {
  ExperimentConfig cfg;
  cfg.leaf_counts = {2};
  Instance integral = toy_raw();
  integral.name = "integral";
  integral.lp.rows[0].rhs = 2.0;
  integral.reference = {};
  const EvalReport r =
      run_experiment({{"missing", std::nullopt, "Io: no such file"}, {"integral", integral, ""}, {"toy-k", toy_raw(), ""}}, cfg);
  REQUIRE(r.instances.size() == 3);
  CHECK_FALSE(r.instances[0].ok());
  CHECK_FALSE(r.instances[1].ok());
  CHECK(r.instances[2].ok());
  const EvalReport empty = run_experiment({}, cfg);
  CHECK(empty.instances.empty());
}
