#pragma once

#include <optional>
#include <vector>

#include "buoyancy/convex_body.hpp"
#include "buoyancy/types.hpp"

namespace buoyancy {

/// Waterline tolerance used by the finite-difference estimators. The bisection
/// runs to machine precision so that the O(h^2) sagitta is resolved.
inline constexpr double kFiniteDifferenceWaterlineTol = 1e-15;

inline constexpr double kDefaultFdStep = 1e-3;

/// Support property of the surface of centers at C(xi): every probe center
/// satisfies (C(eta) - C(xi)) . xi >= -tolerance.
struct Dupin1Report {
  Vector xi;
  Vector center;                 // C(xi)
  std::vector<Vector> probes;    // eta
  std::vector<double> margins;   // (C(eta) - C(xi)) . xi
  double worst = 0.0;            // min margin; negative values are violations
  double tolerance = 0.0;
  bool pass = false;
};

/// Probes at each angle toward +-e for every e of the frame of xi^perp.
/// Angle 0 probes xi itself and yields a margin of exactly 0.
Dupin1Report check_dupin1(const ConvexBody& body, double delta, const Vector& xi,
                          const std::vector<double>& probe_angles,
                          std::optional<double> tolerance = std::nullopt);

/// Same check against explicit probe directions (unit vectors).
Dupin1Report check_dupin1(const ConvexBody& body, double delta, const Vector& xi,
                          const std::vector<Vector>& probes,
                          std::optional<double> tolerance = std::nullopt);

/// Volume change when the waterline plane is turned by an angle about an axis
/// lying in it, orthogonal to eta.
struct Dupin2Report {
  Vector xi;
  Vector eta;
  Vector section_centroid;
  double section_area = 0.0;
  double h = 0.0;
  double offset = 0.0;  // distance s of the displaced axis along eta
  /// Signed changes of the submerged volume at h and h / 10.
  double centroid_change = 0.0;
  double centroid_change_tenth = 0.0;
  double offset_change = 0.0;
  double offset_change_tenth = 0.0;
  /// log10 of |change(h)| / |change(h / 10)|; nullopt when a change is at
  /// rounding level (for example by symmetry).
  std::optional<double> centroid_order;
  std::optional<double> offset_order;
  double predicted_offset_change = 0.0;  // h * s * area
};

/// Rotation by h about the axis through the section centroid and about the
/// parallel axis displaced by `offset` along eta. eta must be a unit vector
/// orthogonal to xi. An offset of 0 selects 0.1 * extent.
Dupin2Report check_dupin2(const ConvexBody& body, double delta, const Vector& xi,
                          const Vector& eta, double h = kDefaultFdStep,
                          double offset = 0.0);

struct MetacenterEstimate {
  Vector xi;
  Vector zeta;        // unit tangent of the motion of C, along J zeta'
  Vector zeta_prime;  // rotation direction in xi^perp
  double h = 0.0;
  double R_fd = 0.0;
  double R_pred = 0.0;  // zeta'^T J zeta' / delta
  double rel_gap = 0.0;
  double R_fd_2h = 0.0;  // the same estimate at step 2h
};

/// Circumradius of C(xi - h), C(xi), C(xi + h) (directions turned toward
/// zeta') projected on span(xi, zeta'), against the section moment over delta.
/// Throws Error(CurvatureUndefined) for collinear centers or a section with no
/// extent along zeta'.
MetacenterEstimate metacentric_radius_fd(const ConvexBody& body, double delta,
                                         const Vector& xi, const Vector& zeta_prime,
                                         double h = kDefaultFdStep);

struct DavidovReport {
  Vector xi;
  double chord_length = 0.0;
  double delta = 0.0;
  double R_pred = 0.0;           // L^3 / (12 delta)
  double R_fd = 0.0;
  double rel_gap = 0.0;
  double center_distance = 0.0;  // |C(K) - C_delta(xi)|
};

/// Planar bodies only; throws Error(UnsupportedDimension) otherwise.
DavidovReport davidov_2d_check(const ConvexBody& body, double delta,
                               const Vector& xi, double h = kDefaultFdStep);

}  // namespace buoyancy
