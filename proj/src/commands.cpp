/**
 * @file commands.cpp
 */
#include "vpcforge/commands.hpp"

#include <spdlog/spdlog.h>

namespace vpcforge {

namespace {

Json header(const char* format, const Instance& inst, std::uint64_t seed) {
  Json j;
  j["format"] = format;
  j["version"] = 1;
  j["instance"] = inst.name;
  j["seed"] = seed;
  return j;
}

std::vector<Cut> read_cuts(const Json& doc, const Instance& inst) {
  std::vector<Cut> cuts;
  if (doc.contains("cuts")) {
    for (const auto& c : doc.at("cuts")) cuts.push_back(cut_from_json(c, inst));
  } else if (doc.contains("alpha")) {
    cuts.push_back(cut_from_json(doc, inst));
  } else {
    throw Error(ErrorCode::InvalidArgument, "cut document has neither 'cuts' nor 'alpha'");
  }
  return cuts;
}

void attach_source(PipelineRun& run, const Json& cuts_doc, const DisjunctionSource& src, const PipelineOptions& opt) {
  const Json* dj = nullptr;
  if (src.disjunction) dj = &*src.disjunction;
  else if (cuts_doc.contains("disjunction")) dj = &cuts_doc.at("disjunction");
  if (dj != nullptr)
    attach_disjunction(run, make_disjunction(run.instance, disjunction_from_json(*dj, run.instance)), opt);
  else
    attach_disjunction(run, build_partial_tree(run.instance, src.leaves, opt.tol.frac), opt);
  if (run.disjunction.terms.empty()) throw Error(ErrorCode::AllPruned, "disjunction has no feasible term");
}

CertifyOptions certify_options(const PipelineOptions& opt) {
  CertifyOptions c;
  c.search.cap = opt.cobasis_cap;
  c.search.tol = opt.tol.feas;
  c.exact = opt.exact;
  c.exact_max_vars = opt.exact_max_vars;
  return c;
}

Json failure_list(const FarkasCertificate& fc) {
  Json f = Json::array();
  for (const auto& s : fc.failures)
    if (!s.empty()) f.push_back(s);
  return f;
}

} // namespace

Json solve_document(const Instance& raw, bool with_ip) {
  const Instance inst = standardize(raw);
  const LpSolution s = solve_lp(inst.lp);
  Json j;
  j["format"] = "vpc-forge-solution";
  j["version"] = 1;
  j["instance"] = inst.name;
  j["status"] = s.optimal() ? "optimal" : (s.status == LpStatus::Infeasible ? "infeasible" : "unbounded");
  if (s.optimal()) {
    j["lp_value"] = inst.transform.objective_to_raw(s.obj);
    const Vector x = inst.transform.point_to_raw(s.x);
    Json xs = Json::object();
    for (std::size_t k = 0; k < inst.num_vars(); ++k)
      xs[k < inst.var_names.size() ? inst.var_names[k] : "x" + std::to_string(k)] = x[static_cast<Eigen::Index>(k)];
    j["x"] = xs;
  }
  if (with_ip) {
    const IpOptimum ip = brute_force_ip(inst);
    j["ip_status"] = ip.feasible ? "optimal" : "infeasible";
    if (ip.feasible) j["ip_value"] = inst.transform.objective_to_raw(ip.value);
  }
  return j;
}

Json cuts_document(const Instance& raw, int leaves, const PipelineOptions& opt, std::uint64_t seed) {
  PipelineRun run = prepare_pipeline(standardize(raw), opt);
  if (run.root.optimal()) run_disjunctive_stage(run, leaves, opt);
  Json j = header("vpc-forge-cuts", run.instance, seed);
  j["space"] = "raw";
  j["leaves"] = leaves;
  j["strengthen"] = opt.strengthen;
  j["lp_value"] = run.root.optimal() ? Json(run.instance.transform.objective_to_raw(run.root.obj)) : Json();
  if (!run.note.empty()) j["note"] = run.note;
  j["disjunction"] = disjunction_to_json(run.disjunction, run.instance);
  Json cuts = Json::array();
  for (const auto& c : run.vpcs) cuts.push_back(cut_to_json(c, run.instance));
  j["cuts"] = cuts;
  if (opt.strengthen) {
    Json st = Json::array();
    for (const auto& s : run.strengthened) st.push_back(strengthen_to_json(s, run.instance));
    j["strengthened"] = st;
  }
  Json gm = Json::array();
  for (const auto& c : run.gmics) gm.push_back(cut_to_json(c, run.instance));
  j["gmics"] = gm;
  spdlog::info("{}: {} VPCs, {} GMICs", run.instance.name, run.vpcs.size(), run.gmics.size());
  return j;
}

Json certify_document(const Instance& raw, const Json& cuts_doc, const DisjunctionSource& src,
                      const PipelineOptions& opt, std::uint64_t seed) {
  PipelineRun run = prepare_pipeline(standardize(raw), opt);
  const std::vector<Cut> cuts = read_cuts(cuts_doc, run.instance);
  attach_source(run, cuts_doc, src, opt);

  std::vector<CutVerdict> verdicts;
  bool have_pi = true;
  try {
    verdicts = verify_cuts(run.instance, &run.collection, cuts, opt.tol.feas, opt.enum_cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    have_pi = false;
    verdicts = verify_cuts(run.instance, &run.collection, cuts, opt.tol.feas, 0);
    spdlog::warn("integer enumeration too large; validity over integer points not checked");
  }

  Json j = header("vpc-forge-certificates", run.instance, seed);
  j["disjunction"] = disjunction_to_json(run.disjunction, run.instance);
  Json out = Json::array();
  const CertifyOptions copt = certify_options(opt);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const FarkasCertificate fc = certify_cut(cuts[i], run.collection, run.rows, copt);
    Json cj;
    cj["cut"] = cut_to_json(cuts[i], run.instance);
    cj["certificate"] = certificate_to_json(fc, run.rows, run.instance, cuts[i]);
    if (!fc.failures.empty()) cj["failures"] = failure_list(fc);
    Json v;
    v["certified"] = fc.complete();
    v["valid_pd"] = verdicts[i].valid_pd;
    v["worst_pd"] = verdicts[i].worst_pd;
    if (have_pi) {
      v["valid_pi"] = verdicts[i].valid_pi;
      v["worst_pi"] = verdicts[i].worst_pi;
    }
    cj["verdict"] = v;
    out.push_back(cj);
  }
  j["cuts"] = out;
  return j;
}

Json strengthen_document(const Instance& raw, const Json& cuts_doc, const DisjunctionSource& src,
                         const PipelineOptions& options, std::uint64_t seed) {
  PipelineOptions opt = options;
  opt.strengthen = true;
  PipelineRun run = prepare_pipeline(standardize(raw), opt);
  const std::vector<Cut> cuts = read_cuts(cuts_doc, run.instance);
  attach_source(run, cuts_doc, src, opt);
  strengthen_stage(run, cuts, opt);

  Json j = header("vpc-forge-strengthened", run.instance, seed);
  j["space"] = "raw";
  j["disjunction"] = disjunction_to_json(run.disjunction, run.instance);
  Json out = Json::array();
  int coefs = 0, strong = 0, skipped = 0, changed = 0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const StrengthenResult& r = run.strengthened[i];
    Json cj;
    cj["input"] = cut_to_json(cuts[i], run.instance);
    cj["result"] = strengthen_to_json(r, run.instance);
    cj["diagnostics"] = {{"certified", run.certificates[i].complete()},
                         {"failures", failure_list(run.certificates[i])}};
    out.push_back(cj);
    coefs += static_cast<int>(r.coefficients.size());
    strong += r.strengthened_coefficients;
    skipped += r.skipped_coefficients;
    changed += r.cut.provenance.strengthened ? 1 : 0;
  }
  j["cuts"] = out;
  j["summary"] = {{"cuts", cuts.size()},
                  {"cuts_strengthened", changed},
                  {"coefficients", coefs},
                  {"coefficients_strengthened", strong},
                  {"coefficients_skipped", skipped}};
  return j;
}

} // namespace vpcforge
