/**
 * @file harness.hpp
 * @brief Full cut pipeline, gap-closed evaluation, validity oracles and the
 *        leaf-count sweep behind the evaluation reports.
 */
#pragma once

#include "vpcforge/gmic.hpp"
#include "vpcforge/monoidal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vpcforge {

struct PipelineOptions {
  bool strengthen = true;
  Tolerances tol;
  bool exact = true;
  std::size_t exact_max_vars = 50;
  std::size_t cobasis_cap = 2000;
  std::uint64_t enum_cap = std::uint64_t{1} << 20;
  GmicOptions gmic;
};

/// Everything produced for one instance and one disjunction size. Cuts live
/// in the standardized space of `instance`.
struct PipelineRun {
  Instance instance; ///< standardized
  LpSolution root;
  std::vector<Cut> gmics;
  int target_leaves = 0;
  Disjunction disjunction;
  PointRayCollection collection;
  std::vector<TermRows> rows;
  std::vector<Cut> vpcs;
  std::vector<FarkasCertificate> certificates; ///< one per VPC when strengthening
  std::vector<StrengthenResult> strengthened;  ///< one per VPC when strengthening
  std::string note;                            ///< e.g. why no VPCs were produced
  double cut_seconds = 0.0;

  std::vector<Cut> strengthened_cuts() const;
};

/// Root LP and GMICs of a standardized instance.
PipelineRun prepare_pipeline(const Instance& standardized, const PipelineOptions& options = {});

/// Tree, cones, PRLP, cuts and (optionally) certificates and strengthening.
/// NoFractional and NotSeparable leave the VPC list empty with a note.
void run_disjunctive_stage(PipelineRun& run, int target_leaves, const PipelineOptions& options = {});

/// Same stages from an explicit disjunction.
void run_disjunctive_stage(PipelineRun& run, Disjunction disjunction, const PipelineOptions& options = {});

/// Rows and basis cones for an explicit disjunction, without generating cuts.
void attach_disjunction(PipelineRun& run, Disjunction disjunction, const PipelineOptions& options = {});

/// Certify and strengthen `cuts` against the disjunction already in `run`.
void strengthen_stage(PipelineRun& run, const std::vector<Cut>& cuts, const PipelineOptions& options = {});

/// LP optimum of the instance with the cuts appended.
double lp_bound_with_cuts(const Instance& instance, const std::vector<Cut>& cuts);

/// 100 (z_cut - z_LP) / (z_IP - z_LP). Throws ZeroGap when z_IP <= z_LP + tol.
double gap_closed(const Instance& instance, const std::vector<Cut>& cuts, double z_lp, double z_ip,
                  double tol = 1e-7);

/// z_IP from the reference value, else by enumeration (may throw TooLarge).
double integer_optimum(const Instance& standardized, std::uint64_t enum_cap = std::uint64_t{1} << 20);

struct CutVerdict {
  bool valid_pi = true;
  bool valid_pd = true;
  double worst_pi = 0.0; ///< largest violation over integer-feasible points
  double worst_pd = 0.0; ///< largest violation over the collection
};

/// Validity against every integer-feasible point (slice LPs for mixed
/// instances) and against the point-ray collection.
std::vector<CutVerdict> verify_cuts(const Instance& standardized, const PointRayCollection* collection,
                                    const std::vector<Cut>& cuts, double tol = 1e-7,
                                    std::uint64_t enum_cap = std::uint64_t{1} << 20);

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"G", "V", "V+", "G+V", "G+V+"};
  return cols;
}

struct LeafResult {
  int leaves = 0;
  int terms = 0;
  std::string status = "ok"; ///< "ok", a note such as NotSeparable, or an error
  bool counted = true;       ///< contributes to the averages
  double gap[5] = {0, 0, 0, 0, 0};
  int gmics = 0;
  int vpcs = 0;
  int cuts_strengthened = 0;
  int coefficients = 0;
  int coefficients_strengthened = 0;
  int coefficients_skipped = 0;
  double disjunctive_gap = 0.0; ///< gap closed by the disjunctive bound min_t z_t
  double cut_seconds = 0.0;
  double seconds_per_cut = 0.0;
  std::vector<BranchRecord> tree_log;
};

struct InstanceResult {
  std::string name;
  std::string status = "ok";
  double z_lp = 0.0;
  double z_ip = 0.0;
  int gmics = 0;
  std::vector<LeafResult> leaves;
  double best[5] = {0, 0, 0, 0, 0};

  bool ok() const { return status == "ok"; }
};

struct ExperimentConfig {
  std::vector<int> leaf_counts{2, 4, 8, 16, 32, 64};
  PipelineOptions pipeline;
  int jobs = 1;
  std::uint64_t seed = 0; ///< recorded; the pipeline has no random choices
};

struct ExperimentInput {
  std::string name;
  std::optional<Instance> instance; ///< raw; empty when loading failed
  std::string load_error;
};

struct SummaryRow {
  std::string label;  ///< "2 leaves" ... "Best"
  double gap[5] = {0, 0, 0, 0, 0};
  int count = 0;
};

struct SetSummary {
  std::string set; ///< "All" or ">=10%"
  std::vector<SummaryRow> rows;
  int wins[5] = {0, 0, 0, 0, 0}; ///< first entry unused (G)
  int instances = 0;
  std::vector<double> cut_seconds;  ///< per leaf count
  std::vector<double> seconds_per_cut;
};

struct EvalReport {
  ExperimentConfig config;
  std::vector<InstanceResult> instances;
  std::vector<SetSummary> sets;
  /// Share of VPCs strengthened and of integer coefficients strengthened, per leaf count.
  std::vector<double> cuts_strengthened_pct;
  std::vector<double> coefficients_strengthened_pct;
};

InstanceResult evaluate_instance(const Instance& raw, const ExperimentConfig& config);

/// Per-instance failures are recorded, never thrown.
EvalReport run_experiment(const std::vector<ExperimentInput>& inputs, const ExperimentConfig& config);

/// Best and set summaries from the per-instance results.
void summarize(EvalReport& report);

std::string report_table(const EvalReport& report);
std::string report_csv(const EvalReport& report, bool with_timing = false);
std::string report_json(const EvalReport& report, bool with_timing = false);

} // namespace vpcforge
