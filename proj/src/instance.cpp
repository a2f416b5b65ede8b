/**
 * @file instance.cpp
 * @brief Instance helpers, standardization and integer enumeration.
 */
#include "vpcforge/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vpcforge {

bool Transform::identity() const {
  if (obj_sign != 1 || obj_offset != 0.0) return false;
  for (std::size_t j = 0; j < shift.size(); ++j)
    if (shift[j] != 0.0 || sign[j] != 1) return false;
  return true;
}

std::pair<Vector, double> Transform::cut_to_raw(const Vector& alpha, double beta) const {
  Vector a = alpha;
  double b = beta;
  for (Eigen::Index j = 0; j < alpha.size(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const int s = uj < sign.size() ? sign[uj] : 1;
    const double sh = uj < shift.size() ? shift[uj] : 0.0;
    a[j] = alpha[j] * s;
    b += a[j] * sh;
  }
  return {a, b};
}

std::pair<Vector, double> Transform::cut_to_std(const Vector& alpha, double beta) const {
  Vector a = alpha;
  double b = beta;
  for (Eigen::Index j = 0; j < alpha.size(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const int s = uj < sign.size() ? sign[uj] : 1;
    const double sh = uj < shift.size() ? shift[uj] : 0.0;
    a[j] = alpha[j] * s;
    b -= alpha[j] * sh;
  }
  return {a, b};
}

Vector Transform::point_to_raw(const Vector& x) const {
  Vector r = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (uj < sign.size()) r[j] = shift[uj] + sign[uj] * x[j];
  }
  return r;
}

double Transform::objective_to_raw(double z_std) const { return obj_sign * (z_std + obj_offset); }
double Transform::objective_to_std(double z_raw) const { return obj_sign * z_raw - obj_offset; }

std::vector<int> Instance::integer_vars() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < integer.size(); ++j)
    if (integer[j]) out.push_back(static_cast<int>(j));
  return out;
}

std::vector<int> Instance::unbounded_integer_vars() const {
  std::vector<int> out;
  for (int j : integer_vars())
    if (!std::isfinite(lp.bounds[j].lo) || !std::isfinite(lp.bounds[j].hi)) out.push_back(j);
  return out;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto ext = path.extension().string();
  const auto fmt = ext == ".json" ? InstanceFormat::NativeJson : InstanceFormat::Mps;
  Instance inst = parse_instance(ss.str(), fmt);
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

Instance standardize(const Instance& raw) {
  if (raw.standardized) return raw;
  raw.lp.validate();
  const std::size_t n = raw.num_vars();
  Instance out;
  out.name = raw.name;
  out.maximize = false;
  out.integer = raw.integer;
  out.var_names = raw.var_names;
  out.standardized = true;

  Transform& tr = out.transform;
  tr.shift.assign(n, 0.0);
  tr.sign.assign(n, 1);
  tr.obj_sign = raw.maximize ? -1 : 1;

  out.lp.objective.assign(n, 0.0);
  out.lp.bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lo = raw.lp.bounds[j].lo;
    double hi = raw.lp.bounds[j].hi;
    if (raw.integer[j]) {
      if (std::isfinite(lo)) lo = std::ceil(lo - 1e-9);
      if (std::isfinite(hi)) hi = std::floor(hi + 1e-9);
    }
    if (std::isfinite(lo)) {
      tr.shift[j] = lo;
      tr.sign[j] = 1;
      out.lp.bounds[j] = {0.0, std::isfinite(hi) ? hi - lo : kInf};
    } else if (std::isfinite(hi)) {
      tr.shift[j] = hi;
      tr.sign[j] = -1;
      out.lp.bounds[j] = {0.0, kInf};
    } else {
      const std::string nm = j < raw.var_names.size() ? raw.var_names[j] : std::to_string(j);
      throw Error(ErrorCode::UnsupportedFeature, "free variable " + nm + " cannot be standardized");
    }
    out.lp.objective[j] = tr.obj_sign * raw.lp.objective[j] * tr.sign[j];
    tr.obj_offset += tr.obj_sign * raw.lp.objective[j] * tr.shift[j];
  }

  auto row_name = [&](std::size_t i) {
    return i < raw.row_names.size() ? raw.row_names[i] : "r" + std::to_string(i);
  };
  for (std::size_t i = 0; i < raw.num_rows(); ++i) {
    const SparseRow& r = raw.lp.rows[i];
    SparseRow s;
    s.sense = Sense::Ge;
    s.rhs = r.rhs;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const int j = r.index[k];
      s.push(j, r.value[k] * tr.sign[j]);
      s.rhs -= r.value[k] * tr.shift[j];
    }
    auto negated = [](SparseRow x) {
      for (auto& v : x.value) v = -v;
      x.rhs = -x.rhs;
      return x;
    };
    switch (r.sense) {
      case Sense::Ge:
        out.lp.rows.push_back(s);
        tr.row_origin.push_back(static_cast<int>(i));
        tr.row_sign.push_back(1);
        out.row_names.push_back(row_name(i));
        break;
      case Sense::Le:
        out.lp.rows.push_back(negated(s));
        tr.row_origin.push_back(static_cast<int>(i));
        tr.row_sign.push_back(-1);
        out.row_names.push_back(row_name(i));
        break;
      case Sense::Eq:
        out.lp.rows.push_back(s);
        tr.row_origin.push_back(static_cast<int>(i));
        tr.row_sign.push_back(1);
        out.row_names.push_back(row_name(i) + "#ge");
        out.lp.rows.push_back(negated(s));
        tr.row_origin.push_back(static_cast<int>(i));
        tr.row_sign.push_back(-1);
        out.row_names.push_back(row_name(i) + "#le");
        break;
    }
  }
  if (raw.reference.lp_value) out.reference.lp_value = tr.objective_to_std(*raw.reference.lp_value);
  if (raw.reference.ip_value) out.reference.ip_value = tr.objective_to_std(*raw.reference.ip_value);
  return out;
}

namespace {

/// Integer domains for enumeration, tightening infinite bounds by LP.
std::vector<std::pair<long long, long long>> integer_domains(const Instance& inst,
                                                             const std::vector<int>& ints) {
  std::vector<std::pair<long long, long long>> dom;
  for (int j : ints) {
    double lo = inst.lp.bounds[j].lo;
    double hi = inst.lp.bounds[j].hi;
    for (int side = 0; side < 2; ++side) {
      double& b = side == 0 ? lo : hi;
      if (std::isfinite(b)) continue;
      LpProblem p = inst.lp;
      std::fill(p.objective.begin(), p.objective.end(), 0.0);
      p.objective[j] = side == 0 ? 1.0 : -1.0;
      const LpSolution s = solve_lp(p);
      if (s.status == LpStatus::Infeasible) return {};
      if (s.status != LpStatus::Optimal)
        throw Error(ErrorCode::TooLarge, "integer variable " + std::to_string(j) + " is unbounded");
      b = s.x[j];
    }
    const auto l = static_cast<long long>(std::ceil(lo - 1e-9));
    const auto h = static_cast<long long>(std::floor(hi + 1e-9));
    dom.emplace_back(l, h);
  }
  return dom;
}

} // namespace

std::uint64_t enumerate_integer_feasible(const Instance& inst, std::uint64_t enum_cap,
                                         const std::function<void(const FeasibleSlice&)>& visit) {
  const auto ints = inst.integer_vars();
  const int n = static_cast<int>(inst.num_vars());
  const int m = static_cast<int>(inst.num_rows());
  const bool pure = static_cast<int>(ints.size()) == n;

  const auto dom = integer_domains(inst, ints);
  if (dom.size() != ints.size()) return 0; // LP relaxation infeasible
  double total = 1.0;
  for (auto [l, h] : dom) {
    if (h < l) return 0;
    total *= static_cast<double>(h - l + 1);
  }
  if (total > static_cast<double>(enum_cap))
    throw Error(ErrorCode::TooLarge, "integer enumeration needs " + std::to_string(total) +
                                         " assignments (cap " + std::to_string(enum_cap) + ")");

  const int k = static_cast<int>(ints.size());
  Matrix a = Matrix::Zero(m, n);
  for (int i = 0; i < m; ++i)
    for (std::size_t t = 0; t < inst.lp.rows[i].size(); ++t)
      a(i, inst.lp.rows[i].index[t]) += inst.lp.rows[i].value[t];

  // Activity range of continuous variables and of integer suffixes per row.
  Matrix rest_max = Matrix::Zero(m, k + 1);
  Matrix rest_min = Matrix::Zero(m, k + 1);
  for (int i = 0; i < m; ++i) {
    double cmax = 0.0, cmin = 0.0;
    for (int j = 0; j < n; ++j) {
      if (inst.is_integer(j) || a(i, j) == 0.0) continue;
      const double lo = inst.lp.bounds[j].lo, hi = inst.lp.bounds[j].hi;
      const double v1 = a(i, j) * lo, v2 = a(i, j) * hi;
      cmax += std::isnan(v1) ? 0.0 : std::max(v1, v2);
      cmin += std::isnan(v1) ? 0.0 : std::min(v1, v2);
    }
    rest_max(i, k) = cmax;
    rest_min(i, k) = cmin;
    for (int d = k - 1; d >= 0; --d) {
      const double c = a(i, ints[d]);
      const double v1 = c * static_cast<double>(dom[d].first);
      const double v2 = c * static_cast<double>(dom[d].second);
      rest_max(i, d) = rest_max(i, d + 1) + std::max(v1, v2);
      rest_min(i, d) = rest_min(i, d + 1) + std::min(v1, v2);
    }
  }

  std::vector<long long> val(k, 0);
  Vector act = Vector::Zero(m);
  Vector point = Vector::Zero(n);
  std::uint64_t found = 0;
  LpProblem slice = inst.lp;

  auto row_ok = [&](int i, double lo_act, double hi_act) {
    const auto& r = inst.lp.rows[i];
    const double tol = 1e-9 * (1.0 + std::abs(r.rhs));
    if (r.sense != Sense::Le && hi_act < r.rhs - tol) return false;
    if (r.sense != Sense::Ge && lo_act > r.rhs + tol) return false;
    return true;
  };

  std::function<void(int)> dfs = [&](int d) {
    for (int i = 0; i < m; ++i)
      if (!row_ok(i, act[i] + rest_min(i, d), act[i] + rest_max(i, d))) return;
    if (d == k) {
      if (pure) {
        for (int t = 0; t < k; ++t) point[ints[t]] = static_cast<double>(val[t]);
        ++found;
        visit(FeasibleSlice{point, nullptr, nullptr});
        return;
      }
      for (int t = 0; t < k; ++t) {
        const auto v = static_cast<double>(val[t]);
        slice.bounds[ints[t]] = {v, v};
      }
      const LpSolution s = solve_lp(slice);
      if (s.status == LpStatus::Infeasible) return;
      point = s.x;
      for (int t = 0; t < k; ++t) point[ints[t]] = static_cast<double>(val[t]);
      ++found;
      visit(FeasibleSlice{point, &slice, &s});
      return;
    }
    const int j = ints[d];
    for (long long v = dom[d].first; v <= dom[d].second; ++v) {
      val[d] = v;
      const double dv = static_cast<double>(v);
      for (int i = 0; i < m; ++i) act[i] += a(i, j) * dv;
      dfs(d + 1);
      for (int i = 0; i < m; ++i) act[i] -= a(i, j) * dv;
    }
  };
  dfs(0);
  return found;
}

IpOptimum brute_force_ip(const Instance& inst, std::uint64_t enum_cap) {
  IpOptimum best;
  const int n = static_cast<int>(inst.num_vars());
  const auto& c = inst.lp.objective;
  best.assignments = enumerate_integer_feasible(inst, enum_cap, [&](const FeasibleSlice& fs) {
    double value;
    Vector x;
    if (fs.slice == nullptr) {
      x = fs.point;
      value = 0.0;
      for (int j = 0; j < n; ++j) value += c[j] * x[j];
    } else {
      const LpSolution& s = *fs.slice_optimum;
      if (s.status == LpStatus::Unbounded) {
        value = -kInf;
        x = s.x;
      } else {
        value = s.obj;
        x = s.x;
      }
      for (int j = 0; j < n; ++j)
        if (inst.is_integer(j)) x[j] = std::round(x[j]);
    }
    if (!best.feasible || value < best.value - 1e-12) {
      best.feasible = true;
      best.value = value;
      best.witness = x;
    }
  });
  return best;
}

} // namespace vpcforge
