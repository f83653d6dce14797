#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "buoyancy/types.hpp"

namespace buoyancy {

namespace detail {

/// Convex polygon, vertices in counter-clockwise order, no repeated points.
struct Polygon {
  std::vector<Eigen::Vector2d> vertices;
};

struct Face {
  std::vector<int> loop;  // counter-clockwise seen from outside
  Eigen::Vector3d normal;
  double offset = 0.0;    // normal . p == offset on the face
};

/// Convex polyhedron as a boundary representation with planar polygon faces.
struct Polyhedron {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
};

}  // namespace detail

/// Facet of a polytope: {p : normal . p <= offset} is a supporting half-space.
struct Facet {
  Vector normal;
  double offset = 0.0;
  std::vector<int> vertices;
};

/// Closed half-space {p : normal . p <= offset}.
struct HalfSpace {
  Vector normal;
  double offset = 0.0;

  /// The complementary closed half-space {p : normal . p >= offset}.
  HalfSpace flipped() const { return {-normal, -offset}; }
};

/// A full-dimensional convex polytope in R^2 or R^3.
///
/// Bodies are immutable values. Volume, centroid and extent are computed once
/// on construction. Smooth bodies enter as meshes; `mesh_facets()` records the
/// resolution of the approximation so that downstream tolerances can be scaled.
class ConvexBody {
 public:
  /// Convex hull of a point set. Throws Error(DegenerateBody) when the hull
  /// is not full-dimensional and Error(UnsupportedDimension) for d outside {2,3}.
  static ConvexBody hull(std::span<const Vector> points);

  static ConvexBody from_polygon(detail::Polygon polygon);
  static ConvexBody from_polyhedron(detail::Polyhedron polyhedron);

  int dimension() const noexcept { return dimension_; }
  const std::vector<Vector>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  double volume() const noexcept { return volume_; }
  const Vector& centroid() const noexcept { return centroid_; }

  /// Length of the bounding-box diagonal; the length scale for tolerances.
  double extent() const noexcept { return extent_; }
  double geom_tolerance() const noexcept { return kGeomRelTol * extent_; }

  /// Number of facets of the smooth-body mesh this body approximates, or 0
  /// for an exact polytope.
  int mesh_facets() const noexcept { return mesh_facets_; }
  bool is_mesh() const noexcept { return mesh_facets_ > 0; }
  ConvexBody with_mesh_tag(int facets) const;

  /// Support function h(u) = max over vertices of u . v.
  double support(const Vector& u) const;

  /// Returns the body moved by p -> scale * R p + shift.
  ConvexBody transformed(const Matrix& rotation, const Vector& shift,
                         double scale = 1.0) const;

  /// Throws Error(InvalidInput) when a stored invariant is violated.
  void validate() const;

  const detail::Polygon* polygon() const {
    return std::get_if<detail::Polygon>(&geometry_);
  }
  const detail::Polyhedron* polyhedron() const {
    return std::get_if<detail::Polyhedron>(&geometry_);
  }

 private:
  using Geometry = std::variant<detail::Polygon, detail::Polyhedron>;

  explicit ConvexBody(Geometry geometry);
  void finish();

  Geometry geometry_;
  int dimension_ = 0;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
  double volume_ = 0.0;
  Vector centroid_;
  double extent_ = 0.0;
  int mesh_facets_ = 0;
};

}  // namespace buoyancy
