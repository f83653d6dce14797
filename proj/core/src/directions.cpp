#include "buoyancy/directions.hpp"

#include <cmath>
#include <numbers>

namespace buoyancy {

std::vector<Vector> fibonacci_directions(std::size_t n) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vector> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    dirs.push_back(Vector{{r * std::cos(phi), r * std::sin(phi), z}});
  }
  return dirs;
}

std::vector<Vector> circle_directions(std::size_t n) {
  std::vector<Vector> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    dirs.push_back(Vector{{std::cos(a), std::sin(a)}});
  }
  return dirs;
}

std::vector<Vector> direction_grid(int dimension, std::size_t n) {
  if (dimension == 2) return circle_directions(n);
  if (dimension == 3) return fibonacci_directions(n);
  throw Error(ErrorCode::UnsupportedDimension, "direction grids exist for d = 2, 3");
}

std::vector<Vector> symmetric_direction_grid(int dimension, std::size_t n) {
  auto dirs = direction_grid(dimension, n);
  const std::size_t m = dirs.size();
  for (std::size_t i = 0; i < m; ++i) dirs.push_back(-dirs[i]);
  return dirs;
}

double grid_spacing(int dimension, std::size_t n) {
  const double count = static_cast<double>(std::max<std::size_t>(n, 1));
  if (dimension == 2) return 2.0 * std::numbers::pi / count;
  return std::sqrt(4.0 * std::numbers::pi / count);
}

Vector rotate_toward(const Vector& xi, const Vector& toward, double angle) {
  if (angle == 0.0) return xi;
  return std::cos(angle) * xi + std::sin(angle) * toward;
}

double angle_between(const Vector& a, const Vector& b) {
  const double along = a.dot(b);
  const double across = (b - along * a).norm();
  return std::atan2(across, along);
}

}  // namespace buoyancy
