#pragma once

#include <vector>

#include <Eigen/Core>

#include "buoyancy/convex_body.hpp"

namespace buoyancy::detail {

struct Moments2 {
  double area = 0.0;
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
};

struct Moments3 {
  double volume = 0.0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
};

/// Signed area and centroid of a simple polygon (positive when ccw).
Moments2 polygon_moments(const std::vector<Eigen::Vector2d>& v);

/// Second moments about the given point: (Ixx, Ixy, Iyy) with
/// Ixx = integral of (x - c.x)^2, Ixy = integral of (x - c.x)(y - c.y).
Eigen::Vector3d polygon_second_moments(const std::vector<Eigen::Vector2d>& v,
                                       const Eigen::Vector2d& about);

/// Volume and centroid via a fan of tetrahedra from the vertex mean.
Moments3 polyhedron_moments(const Polyhedron& p);

}  // namespace buoyancy::detail
