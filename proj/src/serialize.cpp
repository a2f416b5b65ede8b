/**
 * @file serialize.cpp
 */
#include "vpcforge/serialize.hpp"

#include <cmath>

namespace vpcforge {

namespace {

int sign_of(const Instance& inst, int j) {
  const auto& s = inst.transform.sign;
  return static_cast<std::size_t>(j) < s.size() ? s[static_cast<std::size_t>(j)] : 1;
}

double shift_of(const Instance& inst, int j) {
  const auto& s = inst.transform.shift;
  return static_cast<std::size_t>(j) < s.size() ? s[static_cast<std::size_t>(j)] : 0.0;
}

int var_index(const Instance& inst, const Json& v) {
  if (v.is_number_integer()) {
    const int j = v.get<int>();
    if (j < 0 || static_cast<std::size_t>(j) >= inst.num_vars())
      throw Error(ErrorCode::InvalidArgument, "variable index out of range: " + std::to_string(j));
    return j;
  }
  const std::string name = v.get<std::string>();
  for (std::size_t j = 0; j < inst.var_names.size(); ++j)
    if (inst.var_names[j] == name) return static_cast<int>(j);
  throw Error(ErrorCode::InvalidArgument, "unknown variable '" + name + "'");
}

std::string var_name(const Instance& inst, int j) {
  const auto u = static_cast<std::size_t>(j);
  return u < inst.var_names.size() ? inst.var_names[u] : "x" + std::to_string(j);
}

Json vec(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

/// Nonzero entries keyed by row label.
Json sparse(const Vector& v, const std::function<std::string(int)>& label) {
  Json o = Json::object();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) o[label(static_cast<int>(i))] = v[i];
  return o;
}

} // namespace

Json cut_to_json(const Cut& cut, const Instance& inst) {
  const auto [alpha, beta] = inst.transform.cut_to_raw(cut.alpha, cut.beta);
  Json j;
  j["alpha"] = vec(alpha);
  j["beta"] = beta;
  j["family"] = cut.provenance.family;
  if (!cut.provenance.objective.empty()) j["objective"] = cut.provenance.objective;
  if (!cut.provenance.tight_terms.empty()) j["tight_terms"] = cut.provenance.tight_terms;
  j["strengthened"] = cut.provenance.strengthened;
  return j;
}

Cut cut_from_json(const Json& j, const Instance& inst) {
  if (!j.contains("alpha") || !j.contains("beta"))
    throw Error(ErrorCode::InvalidArgument, "cut needs 'alpha' and 'beta'");
  const auto n = static_cast<Eigen::Index>(inst.num_vars());
  Vector alpha = Vector::Zero(n);
  const Json& a = j.at("alpha");
  if (a.is_array()) {
    if (static_cast<Eigen::Index>(a.size()) != n)
      throw Error(ErrorCode::InvalidArgument, "cut has " + std::to_string(a.size()) + " coefficients, instance has " +
                                                  std::to_string(n) + " variables");
    for (Eigen::Index i = 0; i < n; ++i) alpha[i] = a[static_cast<std::size_t>(i)].get<double>();
  } else if (a.is_object()) {
    for (const auto& [k, v] : a.items()) alpha[var_index(inst, Json(k))] = v.get<double>();
  } else {
    throw Error(ErrorCode::InvalidArgument, "'alpha' must be an array or an object");
  }
  const auto [sa, sb] = inst.transform.cut_to_std(alpha, j.at("beta").get<double>());
  Cut cut;
  cut.alpha = sa;
  cut.beta = sb;
  cut.provenance.family = j.value("family", std::string("vpc"));
  cut.provenance.objective = j.value("objective", std::string());
  cut.provenance.strengthened = j.value("strengthened", false);
  if (j.contains("tight_terms")) cut.provenance.tight_terms = j["tight_terms"].get<std::vector<int>>();
  return cut;
}

Json disjunction_to_json(const Disjunction& d, const Instance& inst) {
  auto change = [&](const BoundChange& bc) {
    // x_raw = shift + sign x_std flips the sense for mirrored variables.
    const int s = sign_of(inst, bc.var);
    const bool ge = (bc.sense == Sense::Ge) == (s > 0);
    Json c;
    c["var"] = var_name(inst, bc.var);
    c["index"] = bc.var;
    c["sense"] = ge ? ">=" : "<=";
    c["bound"] = shift_of(inst, bc.var) + s * bc.bound;
    return c;
  };
  Json j;
  Json terms = Json::array();
  for (const auto& t : d.terms) {
    Json tj;
    tj["id"] = t.id;
    Json changes = Json::array();
    for (const auto& bc : t.bound_changes) changes.push_back(change(bc));
    tj["bound_changes"] = changes;
    if (t.leaf_lp.optimal()) tj["leaf_value"] = inst.transform.objective_to_raw(t.leaf_lp.obj);
    terms.push_back(tj);
  }
  j["terms"] = terms;
  Json log = Json::array();
  for (const auto& b : d.tree_log)
    log.push_back({{"node", b.node}, {"child", b.child}, {"var", var_name(inst, b.var)},
                   {"direction", b.up ? "up" : "down"}, {"bound", shift_of(inst, b.var) + sign_of(inst, b.var) * b.bound}});
  j["tree_log"] = log;
  j["pruned"] = d.pruned;
  return j;
}

std::vector<std::vector<BoundChange>> disjunction_from_json(const Json& j, const Instance& inst) {
  const Json& terms = j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) throw Error(ErrorCode::InvalidArgument, "disjunction needs a 'terms' array");
  std::vector<std::vector<BoundChange>> out;
  for (const auto& t : terms) {
    std::vector<BoundChange> changes;
    const Json& list = t.is_array() ? t : t.at("bound_changes");
    for (const auto& c : list) {
      const int var = var_index(inst, c.contains("index") ? c.at("index") : c.at("var"));
      const std::string sense = c.at("sense").get<std::string>();
      if (sense != ">=" && sense != "<=")
        throw Error(ErrorCode::InvalidArgument, "bound change sense must be '>=' or '<='");
      const double raw = c.at("bound").get<double>();
      const int s = sign_of(inst, var);
      const bool ge = (sense == ">=") == (s > 0);
      changes.push_back({var, ge ? Sense::Ge : Sense::Le, (raw - shift_of(inst, var)) * s});
    }
    out.push_back(std::move(changes));
  }
  return out;
}

std::string row_label(const TermRows& rows, const Instance& inst, int row) {
  const auto r = static_cast<std::size_t>(row);
  if (r < inst.num_rows())
    return r < inst.row_names.size() ? inst.row_names[r] : "r" + std::to_string(row);
  if (r < rows.num_original) {
    for (std::size_t j = 0; j < rows.upper_row.size(); ++j)
      if (rows.upper_row[j] == row) return "ub:" + var_name(inst, static_cast<int>(j));
    return "ub:?";
  }
  if (r < rows.first_var_bound()) return "disj:" + std::to_string(r - rows.first_disjunction());
  return "lb:" + var_name(inst, static_cast<int>(r - rows.first_var_bound()));
}

Json certificate_to_json(const FarkasCertificate& cert, const std::vector<TermRows>& rows, const Instance& inst,
                         const Cut& cut) {
  Json j;
  j["space"] = "standardized";
  j["complete"] = cert.complete();
  Json terms = Json::array();
  for (std::size_t t = 0; t < cert.terms.size(); ++t) {
    Json tj;
    tj["term"] = static_cast<int>(t);
    if (!cert.terms[t]) {
      tj["status"] = "failed";
      tj["reason"] = t < cert.failures.size() ? cert.failures[t] : std::string();
      terms.push_back(tj);
      continue;
    }
    const TermCertificate& tc = *cert.terms[t];
    const TermRows& tr = rows[t];
    tj["status"] = "ok";
    Json cob = Json::array();
    for (std::size_t i = 0; i < tc.cobasis.size(); ++i)
      cob.push_back({{"row", row_label(tr, inst, tc.cobasis[i])}, {"class", to_string(tc.row_class[i])}, {"v", tc.v[static_cast<Eigen::Index>(i)]}});
    tj["cobasis"] = cob;
    tj["u"] = sparse(tc.u, [&](int i) { return row_label(tr, inst, i); });
    tj["u0"] = vec(tc.u0);
    tj["u_hat"] = vec(tc.u_hat);
    tj["beta_t"] = tc.beta_t;
    tj["cobases_tried"] = tc.cobases_tried;
    tj["exact_checked"] = tc.exact_checked;
    if (tc.exact_checked) tj["exact_ok"] = tc.exact_ok;
    const auto [ra, rb] = certificate_residuals(tc, tr, cut);
    tj["residual_alpha"] = ra;
    tj["residual_rhs"] = rb;
    tj["valid"] = tc.v.size() == 0 || (tc.v.minCoeff() >= -1e-7 && ra <= 1e-9 * (1 + cut.alpha.cwiseAbs().maxCoeff()) &&
                                       tc.beta_t >= cut.beta - 1e-7 * (1 + std::abs(cut.beta)));
    terms.push_back(tj);
  }
  j["terms"] = terms;
  return j;
}

Json strengthen_to_json(const StrengthenResult& r, const Instance& inst) {
  Json j;
  j["cut"] = cut_to_json(r.cut, inst);
  j["strengthened_coefficients"] = r.strengthened_coefficients;
  j["skipped_coefficients"] = r.skipped_coefficients;
  Json coefs = Json::array();
  for (const auto& c : r.coefficients) {
    const int s = sign_of(inst, c.var);
    Json cj;
    cj["var"] = var_name(inst, c.var);
    cj["before"] = s * c.before;
    cj["after"] = s * c.after;
    cj["delta"] = s * (c.after - c.before);
    if (c.skipped) cj["skipped"] = c.reason;
    coefs.push_back(cj);
  }
  j["coefficients"] = coefs;
  return j;
}

} // namespace vpcforge
