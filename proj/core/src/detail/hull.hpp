#pragma once

#include <vector>

#include <Eigen/Core>

#include "buoyancy/convex_body.hpp"

namespace buoyancy::detail {

/// Counter-clockwise convex hull with collinear points removed. Points within
/// `eps` of a hull edge are dropped. Returns fewer than three vertices when
/// the input is degenerate.
Polygon convex_hull_2d(std::vector<Eigen::Vector2d> points, double eps);

/// Convex hull with coplanar triangles merged into polygon faces. Returns an
/// empty polyhedron when the input spans less than three dimensions.
Polyhedron convex_hull_3d(const std::vector<Eigen::Vector3d>& points,
                          double eps);

/// Newell normal (area-weighted, unnormalized) of a closed planar loop.
Eigen::Vector3d newell_normal(const std::vector<Eigen::Vector3d>& vertices,
                              const std::vector<int>& loop);

}  // namespace buoyancy::detail
