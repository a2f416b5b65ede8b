/**
 * @file vpc_forge.cpp
 * @brief Command line front end: evaluate, cuts, certify, strengthen, solve.
 *
 * Exit codes: 0 success (also for sweeps with per-instance failures),
 * 1 configuration or input errors, 2 usage errors.
 */
#include "vpcforge/commands.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace vpcforge;

namespace {

/// A bad configuration value or a missing input; maps to exit code 1.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything the subcommands read, after config file and flags are merged.
struct RunConfig {
  std::string instances_dir;
  std::string instance;
  std::string cut_file;
  std::string disjunction_file;
  std::vector<int> leaves{2, 4, 8, 16, 32, 64};
  int cut_leaves = 2;
  bool strengthen = false;
  bool exact = true;
  bool timing = false;
  bool quiet = false;
  bool ip = false;
  double tol_feas = 1e-7;
  double tol_frac = 1e-5;
  std::size_t exact_max_vars = 50;
  std::size_t cobasis_cap = 2000;
  std::vector<std::string> out;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string log_level = "info";
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("VPC_FORGE_SEED");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || s[0] == '-') throw ConfigFailure(std::string("VPC_FORGE_SEED is not an unsigned integer: ") + s);
  return v;
}

void check_leaves(const std::vector<int>& leaves) {
  static const std::set<int> allowed{2, 4, 8, 16, 32, 64};
  if (leaves.empty()) throw ConfigFailure("no leaf counts given");
  for (int l : leaves)
    if (!allowed.count(l)) throw ConfigFailure("leaf count " + std::to_string(l) + " not in {2,4,8,16,32,64}");
}

void check_file(const std::string& path, const char* what) {
  if (path.empty()) return;
  if (!fs::is_regular_file(path)) throw ConfigFailure(std::string(what) + " not found: " + path);
}

PipelineOptions pipeline_options(const RunConfig& cfg) {
  PipelineOptions p;
  p.strengthen = cfg.strengthen;
  p.exact = cfg.exact;
  p.exact_max_vars = cfg.exact_max_vars;
  p.cobasis_cap = cfg.cobasis_cap;
  p.tol.feas = cfg.tol_feas;
  p.tol.frac = cfg.tol_frac;
  p.gmic.frac_tol = cfg.tol_frac;
  return p;
}

Instance load_or_fail(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const Error& e) {
    throw ConfigFailure(path + ": " + e.what());
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFailure("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigFailure(path + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::vector<std::string>& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  for (const auto& path : out) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigFailure("cannot write " + path);
    f << text;
  }
}

std::vector<fs::path> instance_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw ConfigFailure("instance directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = e.path().extension().string();
    if (ext == ".json" || ext == ".mps" || ext == ".MPS") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_evaluate(const RunConfig& cfg) {
  check_leaves(cfg.leaves);
  for (const auto& path : cfg.out) {
    const std::string ext = fs::path(path).extension().string();
    if (ext != ".csv" && ext != ".json" && ext != ".txt")
      throw ConfigFailure("--out must end in .csv, .json or .txt: " + path);
  }
  std::vector<ExperimentInput> inputs;
  for (const auto& path : instance_files(cfg.instances_dir)) {
    ExperimentInput in;
    in.name = path.stem().string();
    try {
      in.instance = load_instance(path);
    } catch (const Error& e) {
      in.load_error = e.what();
      spdlog::warn("{}: {}", path.string(), e.what());
    }
    inputs.push_back(std::move(in));
  }
  spdlog::info("evaluating {} instances with leaves {}", inputs.size(), fmt::join(cfg.leaves, ","));
  ExperimentConfig ec;
  ec.leaf_counts = cfg.leaves;
  ec.pipeline = pipeline_options(cfg);
  ec.jobs = cfg.jobs;
  ec.seed = cfg.seed;
  const EvalReport report = run_experiment(inputs, ec);
  for (const auto& path : cfg.out) {
    const std::string ext = fs::path(path).extension().string();
    const std::string text = ext == ".csv"    ? report_csv(report, cfg.timing)
                             : ext == ".json" ? report_json(report, cfg.timing)
                                              : report_table(report);
    write_output(text, {path});
    spdlog::info("wrote {}", path);
  }
  if (!cfg.quiet) std::cout << report_table(report);
  return 0;
}

DisjunctionSource disjunction_source(const RunConfig& cfg, const Json& cuts_doc) {
  DisjunctionSource src;
  src.leaves = cfg.cut_leaves;
  if (!cfg.disjunction_file.empty()) src.disjunction = read_json(cfg.disjunction_file);
  else if (!cuts_doc.contains("disjunction")) check_leaves({cfg.cut_leaves});
  return src;
}

int run_cuts(const RunConfig& cfg) {
  check_leaves({cfg.cut_leaves});
  const Json j = cuts_document(load_or_fail(cfg.instance), cfg.cut_leaves, pipeline_options(cfg), cfg.seed);
  write_output(j.dump(2) + "\n", cfg.out);
  return 0;
}

int run_certify(const RunConfig& cfg) {
  const Instance raw = load_or_fail(cfg.instance);
  const Json doc = read_json(cfg.cut_file);
  const Json j = certify_document(raw, doc, disjunction_source(cfg, doc), pipeline_options(cfg), cfg.seed);
  write_output(j.dump(2) + "\n", cfg.out);
  return 0;
}

int run_strengthen(const RunConfig& cfg) {
  const Instance raw = load_or_fail(cfg.instance);
  const Json doc = read_json(cfg.cut_file);
  const Json j = strengthen_document(raw, doc, disjunction_source(cfg, doc), pipeline_options(cfg), cfg.seed);
  write_output(j.dump(2) + "\n", cfg.out);
  return 0;
}

int run_solve(const RunConfig& cfg) {
  const Json j = solve_document(load_or_fail(cfg.instance), cfg.ip);
  write_output(j.dump(2) + "\n", cfg.out);
  spdlog::info("{}: LP optimum {}", j["instance"].get<std::string>(),
               j.contains("lp_value") ? fmt::format("{}", j["lp_value"].get<double>()) : j["status"].get<std::string>());
  return 0;
}

void add_tolerance_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol-feas", cfg.tol_feas, "Feasibility and cut validity tolerance")->capture_default_str();
  sub->add_option("--tol-frac", cfg.tol_frac, "Distance to an integer that counts as fractional")->capture_default_str();
  sub->add_flag("--exact,!--no-exact", cfg.exact, "Re-check certificates in rational arithmetic")->capture_default_str();
  sub->add_option("--exact-max-vars", cfg.exact_max_vars, "Largest n for the rational re-check")->capture_default_str();
  sub->add_option("--cobasis-cap", cfg.cobasis_cap, "Cobases tried per degenerate vertex")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("vpc-forge");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);

  RunConfig cfg;
  CLI::App app{"vpc-forge: V-polyhedral disjunctive cuts, Farkas certificates and monoidal strengthening.\n"
               "Cuts and bound changes in JSON files are in the variable space of the instance file.\n"
               "The environment variable VPC_FORGE_SEED is recorded in every output."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key = value file; [evaluate] style sections per subcommand; flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--log-level", cfg.log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}))
      ->capture_default_str();

  auto* eval = app.add_subcommand("evaluate", "Sweep leaf counts over a directory and report gap closed");
  eval->add_option("--instances", cfg.instances_dir, "Directory of .json or .mps instances")->required();
  eval->add_option("--leaves", cfg.leaves, "Comma separated leaf counts from {2,4,8,16,32,64}")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_flag("--strengthen", cfg.strengthen, "Apply monoidal strengthening (column V+)");
  eval->add_option("--out", cfg.out, "Report files; .csv, .json or .txt (repeatable)");
  eval->add_flag("--timing", cfg.timing, "Include timing in CSV and JSON (not byte-stable)");
  eval->add_flag("--quiet", cfg.quiet, "Do not print the table to stdout");
  eval->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  add_tolerance_flags(eval, cfg);

  auto* cuts = app.add_subcommand("cuts", "Generate VPCs for one instance");
  cuts->add_option("--instance", cfg.instance, "Instance file")->required();
  cuts->add_option("--leaves", cfg.cut_leaves, "Leaf count of the partial tree")->capture_default_str();
  cuts->add_flag("--strengthen", cfg.strengthen, "Also certify and strengthen the cuts");
  cuts->add_option("--out", cfg.out, "Output JSON file (default stdout)");
  add_tolerance_flags(cuts, cfg);

  auto* cert = app.add_subcommand("certify", "Farkas certificates of cuts for each disjunctive term");
  cert->add_option("--instance", cfg.instance, "Instance file")->required();
  cert->add_option("--cut", cfg.cut_file, "JSON with a cut or a 'cuts' list, optionally a 'disjunction'")->required();
  cert->add_option("--disjunction", cfg.disjunction_file, "JSON with the disjunction terms");
  cert->add_option("--leaves", cfg.cut_leaves, "Tree size when no disjunction is given")->capture_default_str();
  cert->add_option("--out", cfg.out, "Output JSON file (default stdout)");
  add_tolerance_flags(cert, cfg);

  auto* str = app.add_subcommand("strengthen", "Monoidal strengthening of given cuts");
  str->add_option("--instance", cfg.instance, "Instance file")->required();
  str->add_option("--cuts", cfg.cut_file, "JSON with a 'cuts' list, optionally a 'disjunction'")->required();
  str->add_option("--disjunction", cfg.disjunction_file, "JSON with the disjunction terms");
  str->add_option("--leaves", cfg.cut_leaves, "Tree size when no disjunction is given")->capture_default_str();
  str->add_option("--out", cfg.out, "Output JSON file (default stdout)");
  add_tolerance_flags(str, cfg);

  auto* solve = app.add_subcommand("solve", "Solve the LP relaxation");
  solve->add_option("--instance", cfg.instance, "Instance file")->required();
  solve->add_flag("--ip", cfg.ip, "Also compute the integer optimum by enumeration");
  solve->add_option("--out", cfg.out, "Output JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const CLI::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  spdlog::set_level(spdlog::level::from_str(cfg.log_level));
  try {
    cfg.seed = seed_from_env();
    check_file(cfg.instance, "instance");
    check_file(cfg.cut_file, "cut file");
    check_file(cfg.disjunction_file, "disjunction file");
    if (*eval) return run_evaluate(cfg);
    if (*cuts) return run_cuts(cfg);
    if (*cert) return run_certify(cfg);
    if (*str) return run_strengthen(cfg);
    if (*solve) return run_solve(cfg);
  } catch (const ConfigFailure& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const nlohmann::json::exception& e) {
    spdlog::error("malformed JSON input: {}", e.what());
    return 1;
  }
  return 2;
}
