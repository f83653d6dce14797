#include "detail/measure.hpp"

#include <Eigen/Geometry>

namespace buoyancy::detail {

Moments2 polygon_moments(const std::vector<Eigen::Vector2d>& v) {
  Moments2 m;
  const std::size_t n = v.size();
  if (n < 3) return m;
  // Shift to the first vertex to limit cancellation.
  const Eigen::Vector2d o = v[0];
  double twice_area = 0.0;
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Eigen::Vector2d a = v[i] - o;
    const Eigen::Vector2d b = v[i + 1] - o;
    const double cr = a.x() * b.y() - a.y() * b.x();
    twice_area += cr;
    acc += cr * (a + b);
  }
  m.area = 0.5 * twice_area;
  if (twice_area != 0.0) m.centroid = o + acc / (3.0 * twice_area);
  return m;
}

Eigen::Vector3d polygon_second_moments(const std::vector<Eigen::Vector2d>& v,
                                       const Eigen::Vector2d& about) {
  double ixx = 0.0, ixy = 0.0, iyy = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d a = v[i] - about;
    const Eigen::Vector2d b = v[(i + 1) % n] - about;
    const double cr = a.x() * b.y() - b.x() * a.y();
    ixx += cr * (a.x() * a.x() + a.x() * b.x() + b.x() * b.x());
    iyy += cr * (a.y() * a.y() + a.y() * b.y() + b.y() * b.y());
    ixy += cr * (2.0 * a.x() * a.y() + a.x() * b.y() + b.x() * a.y() +
                 2.0 * b.x() * b.y());
  }
  return {ixx / 12.0, ixy / 24.0, iyy / 12.0};
}

Moments3 polyhedron_moments(const Polyhedron& p) {
  Moments3 m;
  if (p.vertices.empty()) return m;
  Eigen::Vector3d o = Eigen::Vector3d::Zero();
  for (const auto& v : p.vertices) o += v;
  o /= static_cast<double>(p.vertices.size());

  double six_vol = 0.0;
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (const Face& f : p.faces) {
    const Eigen::Vector3d a = p.vertices[f.loop[0]] - o;
    for (std::size_t i = 1; i + 1 < f.loop.size(); ++i) {
      const Eigen::Vector3d b = p.vertices[f.loop[i]] - o;
      const Eigen::Vector3d c = p.vertices[f.loop[i + 1]] - o;
      const double det = a.dot(b.cross(c));
      six_vol += det;
      acc += det * (a + b + c);
    }
  }
  m.volume = six_vol / 6.0;
  if (six_vol != 0.0) m.centroid = o + acc / (4.0 * six_vol);
  else m.centroid = o;
  return m;
}

}  // namespace buoyancy::detail
