#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace buoyancy {

/// Points and directions in R^d. Dimension is a runtime property of a body.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Classification tolerance relative to body extent (vertices closer than
/// this to a clipping plane are treated as lying on it).
inline constexpr double kGeomRelTol = 1e-9;

/// Default relative volume tolerance of the waterline solver.
inline constexpr double kWaterlineTol = 1e-10;

/// Default equilibrium tolerance (radians) for exact polytopes.
inline constexpr double kExactEquilibriumTol = 1e-6;

enum class ErrorCode {
  InvalidInput,
  UnsupportedDimension,
  DegenerateBody,
  EmptySection,
  DensityOutOfRange,
  DegenerateBuoyancyLine,
  CurvatureUndefined,
  RequiresCentralSymmetry,
  DimensionMismatch,
  NonConvexProfile,
  InvalidGenerator,
  MalformedBodyFile,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace buoyancy
