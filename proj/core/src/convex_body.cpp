#include "buoyancy/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Geometry>

#include "detail/hull.hpp"
#include "detail/measure.hpp"

namespace buoyancy {

namespace {

constexpr double kHullRelTol = 1e-10;

double bbox_diagonal(std::span<const Vector> points) {
  Vector lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

}  // namespace

ConvexBody::ConvexBody(Geometry geometry) : geometry_(std::move(geometry)) {
  finish();
}

ConvexBody ConvexBody::hull(std::span<const Vector> points) {
  if (points.empty())
    throw Error(ErrorCode::DegenerateBody, "degenerate body: no points");
  const auto d = points[0].size();
  for (const auto& p : points) {
    if (p.size() != d)
      throw Error(ErrorCode::DimensionMismatch,
                  "points have inconsistent dimensions");
    if (!p.allFinite())
      throw Error(ErrorCode::InvalidInput, "non-finite vertex coordinate");
  }
  if (d != 2 && d != 3)
    throw Error(ErrorCode::UnsupportedDimension,
                "unsupported dimension " + std::to_string(d) +
                    " (supported: 2, 3)");
  const double eps = kHullRelTol * bbox_diagonal(points);

  if (d == 2) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(points.size());
    for (const auto& p : points) pts.emplace_back(p[0], p[1]);
    auto poly = detail::convex_hull_2d(std::move(pts), eps);
    if (poly.vertices.size() < 3)
      throw Error(ErrorCode::DegenerateBody,
                  "degenerate body: hull is not full-dimensional");
    return from_polygon(std::move(poly));
  }

  std::vector<Eigen::Vector3d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p[0], p[1], p[2]);
  auto poly = detail::convex_hull_3d(pts, eps);
  if (poly.faces.size() < 4)
    throw Error(ErrorCode::DegenerateBody,
                "degenerate body: hull is not full-dimensional");
  return from_polyhedron(std::move(poly));
}

ConvexBody ConvexBody::from_polygon(detail::Polygon polygon) {
  if (polygon.vertices.size() < 3)
    throw Error(ErrorCode::DegenerateBody,
                "degenerate body: polygon needs three vertices");
  return ConvexBody(Geometry(std::move(polygon)));
}

ConvexBody ConvexBody::from_polyhedron(detail::Polyhedron polyhedron) {
  if (polyhedron.faces.size() < 4)
    throw Error(ErrorCode::DegenerateBody,
                "degenerate body: polyhedron needs four faces");
  return ConvexBody(Geometry(std::move(polyhedron)));
}

void ConvexBody::finish() {
  vertices_.clear();
  facets_.clear();
  if (const auto* pg = polygon()) {
    dimension_ = 2;
    const auto& v = pg->vertices;
    for (const auto& p : v) vertices_.emplace_back(Vector{{p.x(), p.y()}});
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d e = v[(i + 1) % n] - v[i];
      Eigen::Vector2d normal(e.y(), -e.x());
      normal.normalize();
      facets_.push_back({Vector{{normal.x(), normal.y()}}, normal.dot(v[i]),
                         {i, (i + 1) % n}});
    }
    const auto m = detail::polygon_moments(v);
    volume_ = m.area;
    centroid_ = Vector{{m.centroid.x(), m.centroid.y()}};
  } else {
    const auto* ph = polyhedron();
    dimension_ = 3;
    for (const auto& p : ph->vertices)
      vertices_.emplace_back(Vector{{p.x(), p.y(), p.z()}});
    for (const auto& f : ph->faces) {
      facets_.push_back({Vector{{f.normal.x(), f.normal.y(), f.normal.z()}},
                         f.offset, f.loop});
    }
    const auto m = detail::polyhedron_moments(*ph);
    volume_ = m.volume;
    centroid_ = Vector{{m.centroid.x(), m.centroid.y(), m.centroid.z()}};
  }
  extent_ = bbox_diagonal(vertices_);
  if (!(volume_ > 0.0))
    throw Error(ErrorCode::DegenerateBody, "degenerate body: zero volume");
}

ConvexBody ConvexBody::with_mesh_tag(int facets) const {
  ConvexBody copy = *this;
  copy.mesh_facets_ = std::max(0, facets);
  return copy;
}

double ConvexBody::support(const Vector& u) const {
  if (u.size() != dimension_)
    throw Error(ErrorCode::DimensionMismatch,
                "support direction has wrong dimension");
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) h = std::max(h, u.dot(v));
  return h;
}

ConvexBody ConvexBody::transformed(const Matrix& rotation, const Vector& shift,
                                   double scale) const {
  if (rotation.rows() != dimension_ || rotation.cols() != dimension_ ||
      shift.size() != dimension_)
    throw Error(ErrorCode::DimensionMismatch, "transform has wrong dimension");
  if (!(scale > 0.0))
    throw Error(ErrorCode::InvalidInput, "scale must be positive");
  const bool mirrored = rotation.determinant() < 0.0;
  Geometry g = geometry_;
  if (auto* pg = std::get_if<detail::Polygon>(&g)) {
    const Eigen::Matrix2d r = rotation;
    const Eigen::Vector2d s = shift;
    for (auto& p : pg->vertices) p = scale * (r * p) + s;
    if (mirrored) std::reverse(pg->vertices.begin(), pg->vertices.end());
  } else {
    auto& ph = std::get<detail::Polyhedron>(g);
    const Eigen::Matrix3d r = rotation;
    const Eigen::Vector3d s = shift;
    for (auto& p : ph.vertices) p = scale * (r * p) + s;
    for (auto& f : ph.faces) {
      if (mirrored) std::reverse(f.loop.begin(), f.loop.end());
      f.normal = detail::newell_normal(ph.vertices, f.loop).normalized();
      f.offset = f.normal.dot(ph.vertices[f.loop[0]]);
    }
  }
  ConvexBody out{std::move(g)};
  out.mesh_facets_ = mesh_facets_;
  return out;
}

void ConvexBody::validate() const {
  const double eps = geom_tolerance();
  if (!(volume_ > 0.0))
    throw Error(ErrorCode::InvalidInput, "body has no interior");
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    const auto& facet = facets_[f];
    if (std::abs(facet.normal.norm() - 1.0) > kGeomRelTol)
      throw Error(ErrorCode::InvalidInput,
                  "facet " + std::to_string(f) + " normal is not unit length");
    for (const auto& v : vertices_) {
      if (facet.normal.dot(v) - facet.offset > eps)
        throw Error(ErrorCode::InvalidInput,
                    "vertex violates facet " + std::to_string(f));
    }
  }
}

}  // namespace buoyancy
