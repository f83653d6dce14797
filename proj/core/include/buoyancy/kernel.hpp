#pragma once

#include <optional>
#include <vector>

#include "buoyancy/convex_body.hpp"
#include "buoyancy/types.hpp"

namespace buoyancy {

/// The (d-1)-dimensional cut of a body by the hyperplane {p : xi . p = t}.
struct Section {
  Vector xi;
  double offset = 0.0;
  /// Orthonormal basis of the orthogonal complement of xi.
  std::vector<Vector> frame;
  /// Section vertices in frame coordinates (points of R^{d-1}).
  std::vector<Vector> vertices;
  /// Centroid in ambient coordinates.
  Vector centroid;
  /// (d-1)-volume: area for d = 3, chord length for d = 2.
  double area = 0.0;
  /// Centered second moments in frame coordinates,
  /// J(j,k) = integral of (u . eta_j)(u . eta_k) over the centered section.
  Matrix moments;
};

/// Volume and centroid of the part of a body on one side of a hyperplane.
struct CapMoments {
  double volume = 0.0;
  Vector centroid;  // undefined (zero) when volume == 0
};

/// Deterministic orthonormal basis of xi^perp: Gram-Schmidt over the standard
/// basis with the coordinate of largest |xi_k| dropped.
std::vector<Vector> orthonormal_complement(const Vector& xi);

/// body intersected with hs, or nullopt when the intersection has no volume.
std::optional<ConvexBody> clip(const ConvexBody& body, const HalfSpace& hs);

double volume(const ConvexBody& body);

/// Throws Error(DegenerateBody) for zero-volume input.
Vector centroid(const ConvexBody& body);

/// Volume and centroid of body ∩ {p : xi . p <= t} without building the
/// clipped topology. Continuous in t; used by the waterline solver.
CapMoments cap_moments(const ConvexBody& body, const Vector& xi, double t);

/// Volume only; cheaper than cap_moments.
double cap_volume(const ConvexBody& body, const Vector& xi, double t);

/// Throws Error(EmptySection) when the hyperplane misses the interior.
Section section(const ConvexBody& body, const HalfSpace& hs);

/// eta^T J eta: moment of inertia of the section about the (d-2)-axis through
/// its centroid orthogonal to eta. Throws Error(InvalidInput) unless eta is a
/// unit vector orthogonal to xi.
double moment_about_axis(const Section& sec, const Vector& eta);

}  // namespace buoyancy
