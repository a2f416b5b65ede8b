/**
 * @file common.hpp
 * @brief Shared numeric tolerances, vector aliases and the error type.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vpcforge {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerances used across the pipeline.
struct Tolerances {
  double feas = 1e-7;   ///< primal feasibility / cut validity
  double lin = 1e-9;    ///< linear-system identities (inverse, reconstruction)
  double pivot = 1e-10; ///< smallest admissible pivot in Gaussian elimination
  double frac = 1e-5;   ///< minimum distance from an integer to count as fractional
};

enum class ErrorCode {
  IterationLimit,
  Singular,
  NotBasic,
  ParseError,
  UnsupportedFeature,
  TooLarge,
  NoFractional,
  AllPruned,
  NotSeparable,
  InvalidCone,
  DegenerateUnresolved,
  ZeroGap,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with 1-based line/column of the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

inline bool is_integral(double v, double tol) {
  return std::abs(v - std::round(v)) <= tol;
}

/// Distance to the nearest integer.
inline double fractionality(double v) {
  return std::abs(v - std::round(v));
}

} // namespace vpcforge
