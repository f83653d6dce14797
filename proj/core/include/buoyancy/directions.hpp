#pragma once

#include <cstddef>
#include <vector>

#include "buoyancy/types.hpp"

namespace buoyancy {

/// n points of the Fibonacci lattice on S^2.
std::vector<Vector> fibonacci_directions(std::size_t n);

/// n unit vectors at angles 2 pi k / n on S^1.
std::vector<Vector> circle_directions(std::size_t n);

/// Fibonacci lattice for d = 3, uniform angles for d = 2.
std::vector<Vector> direction_grid(int dimension, std::size_t n);

/// The grid together with all antipodes (2n directions, symmetric under -1).
std::vector<Vector> symmetric_direction_grid(int dimension, std::size_t n);

/// Typical angular spacing of an n-point grid.
double grid_spacing(int dimension, std::size_t n);

/// xi rotated by `angle` toward the unit vector `toward` (orthogonal to xi).
Vector rotate_toward(const Vector& xi, const Vector& toward, double angle);

/// Angle between two unit vectors, accurate for small and large angles.
double angle_between(const Vector& a, const Vector& b);

}  // namespace buoyancy
