/**
 * @file report.cpp
 * @brief Table, CSV and JSON renderings of an evaluation report.
 */
#include "vpcforge/harness.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <sstream>

namespace vpcforge {

namespace {

std::string num(double v) { return fmt::format("{:.6f}", v); }

} // namespace

std::string report_table(const EvalReport& report) {
  const auto& cols = report_columns();
  std::ostringstream out;
  out << "Average percent gap closed by VPCs and GMICs\n\n";
  out << fmt::format("{:<11}", "");
  for (const auto& set : report.sets)
    out << fmt::format("{:<40}", fmt::format("{} ({} instances)", set.set, set.instances));
  out << "\n" << fmt::format("{:<11}", "");
  for (std::size_t s = 0; s < report.sets.size(); ++s)
    for (const auto& c : cols) out << fmt::format("{:>8}", c);
  out << "\n";
  const std::size_t nrows = report.sets.empty() ? 0 : report.sets[0].rows.size();
  for (std::size_t r = 0; r < nrows; ++r) {
    if (r + 1 == nrows) out << std::string(11 + 40 * report.sets.size(), '-') << "\n";
    out << fmt::format("{:<11}", report.sets[0].rows[r].label);
    for (const auto& set : report.sets)
      for (int c = 0; c < 5; ++c) out << fmt::format("{:>8.2f}", set.rows[r].gap[c]);
    out << "\n";
  }
  out << fmt::format("{:<11}", "Wins");
  for (const auto& set : report.sets) {
    out << fmt::format("{:>8}", "");
    for (int c = 1; c < 5; ++c) out << fmt::format("{:>8}", set.wins[c]);
  }
  out << "\n\n";

  out << "Average time (seconds) to generate the cuts in column V+\n\n";
  out << fmt::format("{:<14}{:<7}", "Statistic", "Set");
  for (int l : report.config.leaf_counts) out << fmt::format("{:>11}", fmt::format("{} leaves", l));
  out << "\n";
  for (int stat = 0; stat < 2; ++stat) {
    for (std::size_t s = 0; s < report.sets.size(); ++s) {
      const auto& set = report.sets[s];
      out << fmt::format("{:<14}{:<7}", s == 0 ? (stat == 0 ? "Cut time (s)" : "Time/cut (s)") : "", set.set);
      const auto& v = stat == 0 ? set.cut_seconds : set.seconds_per_cut;
      for (double x : v) out << fmt::format("{:>11.4f}", x);
      out << "\n";
    }
  }
  out << "\n";

  out << "Strengthening coverage (percent)\n\n";
  out << fmt::format("{:<14}", "");
  for (int l : report.config.leaf_counts) out << fmt::format("{:>11}", fmt::format("{} leaves", l));
  out << "\n" << fmt::format("{:<14}", "Cuts");
  for (double x : report.cuts_strengthened_pct) out << fmt::format("{:>11.2f}", x);
  out << "\n" << fmt::format("{:<14}", "Coefficients");
  for (double x : report.coefficients_strengthened_pct) out << fmt::format("{:>11.2f}", x);
  out << "\n\n";

  out << "Best gap closed per instance\n\n";
  out << fmt::format("{:<24}", "Instance");
  for (const auto& c : cols) out << fmt::format("{:>8}", c);
  out << fmt::format("{:>8}  {}\n", "V+-V", "Status");
  for (const auto& r : report.instances) {
    out << fmt::format("{:<24}", r.name);
    if (r.ok()) {
      for (double g : r.best) out << fmt::format("{:>8.2f}", g);
      out << fmt::format("{:>8.2f}  ok\n", r.best[2] - r.best[1]);
    } else {
      out << fmt::format("{:>48}  {}\n", "", r.status);
    }
  }
  return out.str();
}

std::string report_csv(const EvalReport& report, bool with_timing) {
  std::ostringstream out;
  out << "set,instance,row,G,V,V+,G+V,G+V+,terms,gmics,vpcs,cuts_strengthened,coefficients,"
         "coefficients_strengthened,status";
  if (with_timing) out << ",cut_seconds,seconds_per_cut";
  out << "\n";
  for (const auto& r : report.instances) {
    if (!r.ok()) {
      out << "instance," << r.name << ",,,,,,,,,,,,," << r.status;
      if (with_timing) out << ",,";
      out << "\n";
      continue;
    }
    for (const auto& lr : r.leaves) {
      out << "instance," << r.name << "," << lr.leaves << " leaves";
      for (double g : lr.gap) out << "," << (lr.counted ? num(g) : "");
      out << "," << lr.terms << "," << lr.gmics << "," << lr.vpcs << "," << lr.cuts_strengthened << ","
          << lr.coefficients << "," << lr.coefficients_strengthened << "," << lr.status;
      if (with_timing) out << "," << num(lr.cut_seconds) << "," << num(lr.seconds_per_cut);
      out << "\n";
    }
    out << "instance," << r.name << ",Best";
    for (double g : r.best) out << "," << num(g);
    out << ",,,,,,,ok";
    if (with_timing) out << ",,";
    out << "\n";
  }
  for (const auto& set : report.sets) {
    for (std::size_t i = 0; i < set.rows.size(); ++i) {
      const auto& row = set.rows[i];
      out << set.set << ",," << row.label;
      for (double g : row.gap) out << "," << num(g);
      out << ",,,,,,," << row.count;
      if (with_timing) {
        if (i < set.cut_seconds.size()) out << "," << num(set.cut_seconds[i]) << "," << num(set.seconds_per_cut[i]);
        else out << ",,";
      }
      out << "\n";
    }
    out << set.set << ",,Wins,";
    for (int c = 1; c < 5; ++c) out << "," << set.wins[c];
    out << ",,,,,,," << set.instances;
    if (with_timing) out << ",,";
    out << "\n";
  }
  return out.str();
}

std::string report_json(const EvalReport& report, bool with_timing) {
  using nlohmann::ordered_json;
  const auto& cols = report_columns();
  auto gaps = [&](const double* g) {
    ordered_json o;
    for (int c = 0; c < 5; ++c) o[cols[c]] = g[c];
    return o;
  };
  ordered_json doc;
  doc["format"] = "vpc-forge-report";
  doc["version"] = 1;
  doc["config"] = {{"leaves", report.config.leaf_counts},
                   {"strengthen", report.config.pipeline.strengthen},
                   {"exact", report.config.pipeline.exact},
                   {"seed", report.config.seed}};
  doc["columns"] = cols;
  ordered_json instances = ordered_json::array();
  for (const auto& r : report.instances) {
    ordered_json ir;
    ir["name"] = r.name;
    ir["status"] = r.status;
    if (r.ok()) {
      ir["z_lp"] = r.z_lp;
      ir["z_ip"] = r.z_ip;
      ir["gmics"] = r.gmics;
      ordered_json rows = ordered_json::array();
      for (const auto& lr : r.leaves) {
        ordered_json row;
        row["leaves"] = lr.leaves;
        row["status"] = lr.status;
        row["counted"] = lr.counted;
        row["terms"] = lr.terms;
        row["gap"] = gaps(lr.gap);
        row["disjunctive_gap"] = lr.disjunctive_gap;
        row["vpcs"] = lr.vpcs;
        row["cuts_strengthened"] = lr.cuts_strengthened;
        row["coefficients"] = lr.coefficients;
        row["coefficients_strengthened"] = lr.coefficients_strengthened;
        row["coefficients_skipped"] = lr.coefficients_skipped;
        ordered_json log = ordered_json::array();
        for (const auto& b : lr.tree_log)
          log.push_back({{"node", b.node}, {"child", b.child}, {"var", b.var},
                         {"direction", b.up ? "up" : "down"}, {"bound", b.bound}});
        row["tree_log"] = log;
        if (with_timing) {
          row["cut_seconds"] = lr.cut_seconds;
          row["seconds_per_cut"] = lr.seconds_per_cut;
        }
        rows.push_back(row);
      }
      ir["leaves"] = rows;
      ir["best"] = gaps(r.best);
    }
    instances.push_back(ir);
  }
  doc["instances"] = instances;
  ordered_json sets = ordered_json::array();
  for (const auto& set : report.sets) {
    ordered_json s;
    s["set"] = set.set;
    s["instances"] = set.instances;
    ordered_json rows = ordered_json::array();
    for (const auto& row : set.rows) rows.push_back({{"row", row.label}, {"count", row.count}, {"gap", gaps(row.gap)}});
    s["rows"] = rows;
    ordered_json wins;
    for (int c = 1; c < 5; ++c) wins[cols[c]] = set.wins[c];
    s["wins"] = wins;
    if (with_timing) {
      s["cut_seconds"] = set.cut_seconds;
      s["seconds_per_cut"] = set.seconds_per_cut;
    }
    sets.push_back(s);
  }
  doc["sets"] = sets;
  doc["strengthening"] = {{"cuts_pct", report.cuts_strengthened_pct},
                          {"coefficients_pct", report.coefficients_strengthened_pct}};
  return doc.dump(2) + "\n";
}

} // namespace vpcforge
