/**
 * @file harness.cpp
 * @brief Pipeline stages, gap closed, validity oracles and the sweep.
 */
#include "vpcforge/harness.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace vpcforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Cut> concat(const std::vector<Cut>& a, const std::vector<Cut>& b) {
  std::vector<Cut> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

} // namespace

std::vector<Cut> PipelineRun::strengthened_cuts() const {
  if (strengthened.empty()) return vpcs;
  std::vector<Cut> out;
  for (const auto& s : strengthened) out.push_back(s.cut);
  return out;
}

PipelineRun prepare_pipeline(const Instance& standardized, const PipelineOptions& options) {
  PipelineRun run;
  run.instance = standardized;
  run.root = solve_lp(standardized.lp);
  if (run.root.status == LpStatus::Infeasible)
    throw Error(ErrorCode::InvalidArgument, "LP relaxation is infeasible");
  if (run.root.status == LpStatus::Unbounded)
    throw Error(ErrorCode::InvalidArgument, "LP relaxation is unbounded");
  run.gmics = generate_gmics(standardized, run.root, options.gmic);
  return run;
}

void run_disjunctive_stage(PipelineRun& run, int target_leaves, const PipelineOptions& options) {
  const auto start = Clock::now();
  run.target_leaves = target_leaves;
  Disjunction d;
  try {
    d = build_partial_tree(run.instance, target_leaves, options.tol.frac);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoFractional) throw;
    run.note = e.what();
    run.cut_seconds = seconds_since(start);
    return;
  }
  run_disjunctive_stage(run, std::move(d), options);
  run.cut_seconds = seconds_since(start);
}

void attach_disjunction(PipelineRun& run, Disjunction disjunction, const PipelineOptions& options) {
  run.disjunction = std::move(disjunction);
  run.rows.clear();
  run.vpcs.clear();
  run.certificates.clear();
  run.strengthened.clear();
  std::vector<BasisCone> cones;
  for (const auto& term : run.disjunction.terms) {
    run.rows.push_back(term_rows(run.instance, term));
    cones.push_back(term_basis_cone(run.instance, term, options.tol.feas));
  }
  run.collection = assemble_collection(std::move(cones));
}

void run_disjunctive_stage(PipelineRun& run, Disjunction disjunction, const PipelineOptions& options) {
  const auto start = Clock::now();
  attach_disjunction(run, std::move(disjunction), options);

  const Vector& xbar = run.root.x;
  const std::size_t limit = gmic_sources(run.instance, run.root, options.tol.frac).size();
  if (limit == 0) {
    run.note = "NoFractional: LP optimum is integral";
  } else {
    try {
      const Prlp prlp = build_prlp(run.collection, xbar);
      HarvestContext ctx;
      ctx.objective = run.instance.lp.objective;
      ctx.fractional = fractional_integers(run.instance, xbar, options.tol.frac);
      ctx.feas_tol = options.tol.feas;
      run.vpcs = harvest_cuts(prlp, limit, ctx);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSeparable) throw;
      run.note = e.what();
    }
  }
  if (options.strengthen && !run.vpcs.empty()) strengthen_stage(run, run.vpcs, options);
  run.cut_seconds = seconds_since(start);
}

void strengthen_stage(PipelineRun& run, const std::vector<Cut>& cuts, const PipelineOptions& options) {
  std::vector<TermBounds> bounds;
  for (const auto& term : run.disjunction.terms) bounds.push_back(term_lower_bounds(run.instance, term));
  CertifyOptions copt;
  copt.search.cap = options.cobasis_cap;
  copt.search.tol = options.tol.feas;
  copt.exact = options.exact;
  copt.exact_max_vars = options.exact_max_vars;
  run.certificates.clear();
  run.strengthened.clear();
  for (const auto& cut : cuts) {
    run.certificates.push_back(certify_cut(cut, run.collection, run.rows, copt));
    run.strengthened.push_back(strengthen_cut(cut, run.certificates.back(), bounds, run.instance, options.tol.feas));
  }
}

double lp_bound_with_cuts(const Instance& inst, const std::vector<Cut>& cuts) {
  LpProblem p = inst.lp;
  for (const auto& c : cuts) {
    SparseRow r;
    for (Eigen::Index j = 0; j < c.alpha.size(); ++j)
      if (c.alpha[j] != 0.0) r.push(static_cast<int>(j), c.alpha[j]);
    r.rhs = c.beta;
    p.rows.push_back(std::move(r));
  }
  const LpSolution s = solve_lp(p);
  if (s.status == LpStatus::Infeasible) return kInf;
  if (s.status == LpStatus::Unbounded) return -kInf;
  return s.obj;
}

double gap_closed(const Instance& inst, const std::vector<Cut>& cuts, double z_lp, double z_ip, double tol) {
  if (!(z_ip > z_lp + tol)) throw Error(ErrorCode::ZeroGap, "integrality gap is zero");
  if (cuts.empty()) return 0.0;
  const double z_cut = lp_bound_with_cuts(inst, cuts);
  double g = 100.0 * (z_cut - z_lp) / (z_ip - z_lp);
  if (g < -1e-6 || g > 100.0 + 1e-6)
    spdlog::warn("{}: gap closed {:.9f} outside [0, 100]; clamped", inst.name, g);
  return std::clamp(g, 0.0, 100.0);
}

double integer_optimum(const Instance& inst, std::uint64_t enum_cap) {
  if (inst.reference.ip_value) return *inst.reference.ip_value;
  const IpOptimum opt = brute_force_ip(inst, enum_cap);
  if (!opt.feasible) throw Error(ErrorCode::InvalidArgument, "instance has no integer-feasible point");
  return opt.value;
}

std::vector<CutVerdict> verify_cuts(const Instance& inst, const PointRayCollection* collection,
                                    const std::vector<Cut>& cuts, double tol, std::uint64_t enum_cap) {
  std::vector<CutVerdict> out(cuts.size());
  enumerate_integer_feasible(inst, enum_cap, [&](const FeasibleSlice& fs) {
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      double viol;
      if (!fs.slice) {
        viol = cuts[c].violation(fs.point);
      } else {
        LpProblem q = *fs.slice;
        q.objective.assign(cuts[c].alpha.data(), cuts[c].alpha.data() + cuts[c].alpha.size());
        const LpSolution s = solve_lp(q, &fs.slice_optimum->basis);
        viol = s.status == LpStatus::Unbounded ? kInf : cuts[c].beta - s.obj;
      }
      out[c].worst_pi = std::max(out[c].worst_pi, viol);
    }
  });
  if (collection) {
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      for (const auto& p : collection->points)
        out[c].worst_pd = std::max(out[c].worst_pd, cuts[c].violation(p));
      for (const auto& r : collection->rays)
        out[c].worst_pd = std::max(out[c].worst_pd, -cuts[c].alpha.dot(r));
    }
  }
  for (auto& v : out) {
    v.valid_pi = v.worst_pi <= tol;
    v.valid_pd = v.worst_pd <= tol;
  }
  return out;
}

InstanceResult evaluate_instance(const Instance& raw, const ExperimentConfig& config) {
  InstanceResult res;
  res.name = raw.name;
  const PipelineOptions& opt = config.pipeline;
  PipelineRun base;
  try {
    const Instance std_inst = standardize(raw);
    base = prepare_pipeline(std_inst, opt);
    res.z_lp = base.root.obj;
    res.z_ip = integer_optimum(std_inst, opt.enum_cap);
    if (!(res.z_ip > res.z_lp + opt.tol.feas)) throw Error(ErrorCode::ZeroGap, "integrality gap is zero");
    res.gmics = static_cast<int>(base.gmics.size());
  } catch (const Error& e) {
    res.status = to_string(e.code());
    spdlog::warn("{}: {}", raw.name, e.what());
    return res;
  }

  const double gap_g = gap_closed(base.instance, base.gmics, res.z_lp, res.z_ip, opt.tol.feas);
  for (int leaves : config.leaf_counts) {
    LeafResult lr;
    lr.leaves = leaves;
    lr.gmics = res.gmics;
    try {
      PipelineRun run = base;
      run_disjunctive_stage(run, leaves, opt);
      lr.terms = static_cast<int>(run.disjunction.terms.size());
      lr.tree_log = run.disjunction.tree_log;
      if (!run.note.empty()) lr.status = run.note.substr(0, run.note.find(':'));
      const std::vector<Cut> plus = opt.strengthen ? run.strengthened_cuts() : run.vpcs;
      const auto gap = [&](const std::vector<Cut>& cuts) {
        return gap_closed(run.instance, cuts, res.z_lp, res.z_ip, opt.tol.feas);
      };
      lr.gap[0] = gap_g;
      lr.gap[1] = gap(run.vpcs);
      lr.gap[2] = gap(plus);
      lr.gap[3] = gap(concat(base.gmics, run.vpcs));
      lr.gap[4] = gap(concat(base.gmics, plus));
      lr.vpcs = static_cast<int>(run.vpcs.size());
      for (const auto& s : run.strengthened) {
        lr.cuts_strengthened += s.cut.provenance.strengthened ? 1 : 0;
        lr.coefficients += static_cast<int>(s.coefficients.size());
        lr.coefficients_strengthened += s.strengthened_coefficients;
        lr.coefficients_skipped += s.skipped_coefficients;
      }
      if (!run.disjunction.terms.empty()) {
        const double zd = std::min(run.disjunction.disjunctive_bound(), res.z_ip);
        lr.disjunctive_gap = std::clamp(100.0 * (zd - res.z_lp) / (res.z_ip - res.z_lp), 0.0, 100.0);
      }
      lr.cut_seconds = run.cut_seconds;
      lr.seconds_per_cut = lr.vpcs > 0 ? run.cut_seconds / lr.vpcs : 0.0;
    } catch (const Error& e) {
      lr.status = to_string(e.code());
      lr.counted = false;
      spdlog::warn("{} ({} leaves): {}", raw.name, leaves, e.what());
    }
    res.leaves.push_back(std::move(lr));
  }
  for (int c = 0; c < 5; ++c) {
    res.best[c] = 0.0;
    for (const auto& lr : res.leaves)
      if (lr.counted) res.best[c] = std::max(res.best[c], lr.gap[c]);
  }
  return res;
}

EvalReport run_experiment(const std::vector<ExperimentInput>& inputs, const ExperimentConfig& config) {
  EvalReport report;
  report.config = config;
  report.instances.resize(inputs.size());
  auto work = [&](std::size_t i) {
    const auto& in = inputs[i];
    if (!in.instance) {
      report.instances[i].name = in.name;
      report.instances[i].status = in.load_error.empty() ? "LoadError" : in.load_error;
      return;
    }
    try {
      report.instances[i] = evaluate_instance(*in.instance, config);
    } catch (const std::exception& e) {
      report.instances[i] = InstanceResult{};
      report.instances[i].status = "InternalError";
      spdlog::error("{}: {}", in.name, e.what());
    }
    report.instances[i].name = in.name;
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1 || inputs.size() < 2) {
    for (std::size_t i = 0; i < inputs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) work(i);
      });
    for (auto& t : pool) t.join();
  }
  summarize(report);
  return report;
}

void summarize(EvalReport& report) {
  const auto& leaf_counts = report.config.leaf_counts;
  report.sets.clear();
  for (int s = 0; s < 2; ++s) {
    SetSummary set;
    set.set = s == 0 ? "All" : ">=10%";
    std::vector<const InstanceResult*> members;
    for (const auto& r : report.instances)
      if (r.ok() && (s == 0 || r.best[1] >= 10.0)) members.push_back(&r);
    set.instances = static_cast<int>(members.size());
    for (std::size_t li = 0; li < leaf_counts.size(); ++li) {
      SummaryRow row;
      row.label = std::to_string(leaf_counts[li]) + " leaves";
      double secs = 0.0, per = 0.0;
      for (const auto* r : members) {
        const LeafResult& lr = r->leaves[li];
        if (!lr.counted) continue;
        ++row.count;
        for (int c = 0; c < 5; ++c) row.gap[c] += lr.gap[c];
        secs += lr.cut_seconds;
        per += lr.seconds_per_cut;
      }
      if (row.count > 0) {
        for (double& g : row.gap) g /= row.count;
        secs /= row.count;
        per /= row.count;
      }
      set.rows.push_back(row);
      set.cut_seconds.push_back(secs);
      set.seconds_per_cut.push_back(per);
    }
    SummaryRow best;
    best.label = "Best";
    for (const auto* r : members) {
      ++best.count;
      for (int c = 0; c < 5; ++c) best.gap[c] += r->best[c];
      for (int c = 1; c < 5; ++c)
        if (r->best[c] >= r->best[0] + 1e-3) ++set.wins[c];
    }
    if (best.count > 0)
      for (double& g : best.gap) g /= best.count;
    set.rows.push_back(best);
    report.sets.push_back(std::move(set));
  }

  report.cuts_strengthened_pct.assign(leaf_counts.size(), 0.0);
  report.coefficients_strengthened_pct.assign(leaf_counts.size(), 0.0);
  for (std::size_t li = 0; li < leaf_counts.size(); ++li) {
    long cuts = 0, cuts_s = 0, coefs = 0, coefs_s = 0;
    for (const auto& r : report.instances) {
      if (!r.ok() || !r.leaves[li].counted) continue;
      cuts += r.leaves[li].vpcs;
      cuts_s += r.leaves[li].cuts_strengthened;
      coefs += r.leaves[li].coefficients;
      coefs_s += r.leaves[li].coefficients_strengthened;
    }
    report.cuts_strengthened_pct[li] = cuts ? 100.0 * static_cast<double>(cuts_s) / static_cast<double>(cuts) : 0.0;
    report.coefficients_strengthened_pct[li] =
        coefs ? 100.0 * static_cast<double>(coefs_s) / static_cast<double>(coefs) : 0.0;
  }
}

} // namespace vpcforge
