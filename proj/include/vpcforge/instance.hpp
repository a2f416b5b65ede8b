/**
 * @file instance.hpp
 * @brief MILP instances, standardization to >=-rows over x >= 0, file
 *        ingestion and the brute-force integer optimum.
 */
#pragma once

#include "vpcforge/lp.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vpcforge {

/// Affine map between the raw and the standardized variable space:
///     x_raw[j] = shift[j] + sign[j] * x_std[j].
struct Transform {
  std::vector<double> shift;
  std::vector<int> sign;
  int obj_sign = 1;        ///< -1 when the raw objective is maximized
  double obj_offset = 0.0; ///< obj_sign * c_raw' x_raw = c_std' x_std + obj_offset
  std::vector<int> row_origin; ///< raw row of each standardized row
  std::vector<int> row_sign;   ///< +1 kept, -1 negated

  bool identity() const;
  /// Map a cut alpha' x_std >= beta to the raw space.
  std::pair<Vector, double> cut_to_raw(const Vector& alpha, double beta) const;
  /// Map a raw-space cut into the standardized space.
  std::pair<Vector, double> cut_to_std(const Vector& alpha, double beta) const;
  Vector point_to_raw(const Vector& x) const;
  double objective_to_raw(double z_std) const;
  double objective_to_std(double z_raw) const;
};

struct ReferenceValues {
  std::optional<double> lp_value;
  std::optional<double> ip_value;
};

struct Instance {
  std::string name;
  bool maximize = false; ///< raw objective sense; standardized instances minimize
  LpProblem lp;
  std::vector<bool> integer; ///< per-variable integrality flag
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;
  ReferenceValues reference; ///< in this instance's own objective space
  Transform transform;
  bool standardized = false;

  std::size_t num_vars() const { return lp.num_vars(); }
  std::size_t num_rows() const { return lp.num_rows(); }
  std::vector<int> integer_vars() const;
  bool is_integer(int j) const { return integer[static_cast<std::size_t>(j)]; }
  /// Integer variables with an infinite bound.
  std::vector<int> unbounded_integer_vars() const;
};

enum class InstanceFormat { Mps, NativeJson };

/// Throws ParseError (line/column) or Error(UnsupportedFeature).
Instance parse_instance(std::string_view text, InstanceFormat format);
/// Format chosen by extension: .json native, anything else MPS.
Instance load_instance(const std::filesystem::path& path);
/// Native JSON text (format tag "vpc-forge-instance", version 1).
std::string serialize_instance(const Instance& instance);

/// Rows become >=, equalities split in two, lower bounds shifted to 0 and
/// variables with only a finite upper bound are mirrored. Fully free
/// variables are rejected with Error(UnsupportedFeature).
Instance standardize(const Instance& raw);

struct IpOptimum {
  bool feasible = false;
  double value = kInf;
  Vector witness;
  std::uint64_t assignments = 0; ///< integer assignments examined
};

/// Exact optimum over the integer hull by enumerating every assignment of the
/// integer variables (continuous part by LP). Infinite integer bounds are
/// replaced by LP-implied bounds when those are finite.
/// Throws Error(TooLarge) when the enumeration would exceed enum_cap.
IpOptimum brute_force_ip(const Instance& instance, std::uint64_t enum_cap = std::uint64_t{1} << 20);

/// Calls `visit(x)` for each integer-feasible assignment. For pure integer
/// instances x is the lattice point; for mixed instances x carries the integer
/// part and an LP-feasible completion, and `visit` also gets the fixed-integer
/// slice problem. Returns the number of feasible assignments.
struct FeasibleSlice {
  const Vector& point;
  const LpProblem* slice;          ///< nullptr for pure integer instances
  const LpSolution* slice_optimum; ///< optimum of the slice under the instance objective
};
std::uint64_t enumerate_integer_feasible(const Instance& instance, std::uint64_t enum_cap,
                                         const std::function<void(const FeasibleSlice&)>& visit);

} // namespace vpcforge
