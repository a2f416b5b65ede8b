/**
 * @file collector.cpp
 */
#include "vpcforge/collector.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace vpcforge {

std::vector<int> tight_rows(const TermRows& rows, const Vector& x, double tol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows.lp.rows[i];
    if (std::abs(r.dot(x) - r.rhs) <= tol * (1.0 + std::abs(r.rhs))) out.push_back(static_cast<int>(i));
  }
  return out;
}

BasisCone basis_cone_from_rows(const TermRows& rows, int term_id, const Vector& vertex,
                               std::vector<int> cobasis, double feas_tol) {
  const auto n = static_cast<Eigen::Index>(rows.lp.num_vars());
  if (static_cast<Eigen::Index>(cobasis.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "cobasis must have one row per variable");
  std::sort(cobasis.begin(), cobasis.end());
  BasisCone cone;
  cone.term_id = term_id;
  cone.vertex = vertex;
  cone.cobasis = std::move(cobasis);
  cone.matrix = Matrix::Zero(n, n);
  cone.rhs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows.lp.rows[static_cast<std::size_t>(cone.cobasis[i])];
    for (std::size_t k = 0; k < r.size(); ++k) cone.matrix(i, r.index[k]) += r.value[k];
    cone.rhs[i] = r.rhs;
    cone.row_class.push_back(rows.row_class[static_cast<std::size_t>(cone.cobasis[i])]);
  }
  CobasisMatrix cm{cone.cobasis, cone.matrix, cone.rhs};
  cone.rays = inverse_columns(cm);
  const auto tight = tight_rows(rows, vertex, feas_tol);
  cone.num_tight = static_cast<int>(tight.size());
  cone.degenerate = cone.num_tight > n;
  return cone;
}

BasisCone term_basis_cone(const Instance& inst, const DisjunctionTerm& term, double feas_tol) {
  if (!term.leaf_lp.optimal())
    throw Error(ErrorCode::InvalidArgument, "term " + std::to_string(term.id) + " has no optimal leaf LP");
  const TermRows rows = term_rows(inst, term);
  const int n = static_cast<int>(inst.num_vars());
  const auto& state = term.leaf_lp.basis.state;
  std::vector<int> cobasis;
  for (int id = 0; id < static_cast<int>(state.size()); ++id) {
    const VarState s = state[static_cast<std::size_t>(id)];
    if (s == VarState::Basic) continue;
    if (id >= n) {
      cobasis.push_back(id - n);
      continue;
    }
    if (s == VarState::AtUpper) {
      if (rows.upper_row[id] < 0)
        throw Error(ErrorCode::InvalidArgument, "variable at an infinite upper bound");
      cobasis.push_back(rows.upper_row[id]);
    } else if (s == VarState::AtLower) {
      cobasis.push_back(rows.lower_row[id]);
    } else {
      throw Error(ErrorCode::InvalidArgument, "free nonbasic variable in a leaf basis");
    }
  }
  return basis_cone_from_rows(rows, term.id, term.leaf_lp.x, std::move(cobasis), feas_tol);
}

std::vector<Vector> PointRayCollection::term_points(int term_id) const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::find(point_terms[i].begin(), point_terms[i].end(), term_id) != point_terms[i].end())
      out.push_back(points[i]);
  return out;
}

namespace {

Vector unit_max(const Vector& r) {
  const double m = r.cwiseAbs().maxCoeff();
  return m > 0.0 ? Vector(r / m) : r;
}

} // namespace

PointRayCollection assemble_collection(std::vector<BasisCone> cones) {
  PointRayCollection c;
  std::vector<Vector> normalized;
  for (const auto& cone : cones) {
    bool seen = false;
    for (std::size_t i = 0; i < c.points.size() && !seen; ++i) {
      if ((c.points[i] - cone.vertex).cwiseAbs().maxCoeff() <= 1e-9) {
        c.point_terms[i].push_back(cone.term_id);
        seen = true;
      }
    }
    if (!seen) {
      c.points.push_back(cone.vertex);
      c.point_terms.push_back({cone.term_id});
    }
    for (const auto& r : cone.rays) {
      const Vector u = unit_max(r);
      bool dup = false;
      for (std::size_t i = 0; i < normalized.size() && !dup; ++i) {
        if ((normalized[i] - u).cwiseAbs().maxCoeff() <= 1e-9) {
          if (c.ray_terms[i].back() != cone.term_id) c.ray_terms[i].push_back(cone.term_id);
          dup = true;
        }
      }
      if (dup) continue;
      normalized.push_back(u);
      c.rays.push_back(r);
      c.ray_terms.push_back({cone.term_id});
    }
  }
  c.cones = std::move(cones);
  return c;
}

std::string collection_to_json(const PointRayCollection& c) {
  using nlohmann::json;
  auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  json doc;
  doc["points"] = json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i)
    doc["points"].push_back({{"value", vec(c.points[i])}, {"terms", c.point_terms[i]}});
  doc["rays"] = json::array();
  for (std::size_t i = 0; i < c.rays.size(); ++i)
    doc["rays"].push_back({{"value", vec(c.rays[i])}, {"terms", c.ray_terms[i]}});
  doc["cones"] = json::array();
  for (const auto& cone : c.cones) {
    json classes = json::array();
    for (auto rc : cone.row_class) classes.push_back(to_string(rc));
    doc["cones"].push_back({{"term", cone.term_id},
                            {"vertex", vec(cone.vertex)},
                            {"cobasis", cone.cobasis},
                            {"row_class", classes},
                            {"degenerate", cone.degenerate},
                            {"tight_rows", cone.num_tight}});
  }
  return doc.dump(2) + "\n";
}

} // namespace vpcforge
