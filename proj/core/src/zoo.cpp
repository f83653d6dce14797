#include "buoyancy/zoo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "buoyancy/directions.hpp"

namespace buoyancy {

namespace {

constexpr int kMaxSeedBumps = 64;

// Regular N-gon in the plane; in space half a Fibonacci lattice and its
// antipodes, so that the mesh is symmetric about the origin.
std::vector<Vector> sphere_points(int dimension, int n) {
  if (dimension == 2) return circle_directions(static_cast<std::size_t>(n));
  if (dimension != 3)
    throw Error(ErrorCode::UnsupportedDimension, "ball meshes exist for d = 2, 3");
  return symmetric_direction_grid(3, static_cast<std::size_t>((n + 1) / 2));
}

int facet_count(const ConvexBody& b) { return static_cast<int>(b.facets().size()); }

ConvexBody tag_as_mesh(const ConvexBody& b) { return b.with_mesh_tag(facet_count(b)); }

double param(const GeneratorSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  if (it->second.size() != 1)
    throw Error(ErrorCode::InvalidGenerator,
                "generator '" + spec.name + "': parameter '" + key +
                    "' must be a number");
  return it->second[0];
}

std::vector<double> param_list(const GeneratorSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? std::vector<double>{} : it->second;
}

void require_positive(const GeneratorSpec& spec, const std::string& key, double v) {
  if (!(v > 0.0))
    throw Error(ErrorCode::InvalidGenerator,
                "generator '" + spec.name + "': parameter '" + key +
                    "' must be positive");
}

struct Harmonics {
  const ZindlerParams& p;

  double value(double s) const {
    double f = 0.0;
    for (std::size_t k = 0; k < p.cos_coeffs.size(); ++k)
      f += p.cos_coeffs[k] * std::cos(static_cast<double>(2 * k + 3) * s);
    for (std::size_t k = 0; k < p.sin_coeffs.size(); ++k)
      f += p.sin_coeffs[k] * std::sin(static_cast<double>(2 * k + 3) * s);
    return f;
  }

  double derivative(double s) const {
    double df = 0.0;
    for (std::size_t k = 0; k < p.cos_coeffs.size(); ++k) {
      const double m = static_cast<double>(2 * k + 3);
      df -= m * p.cos_coeffs[k] * std::sin(m * s);
    }
    for (std::size_t k = 0; k < p.sin_coeffs.size(); ++k) {
      const double m = static_cast<double>(2 * k + 3);
      df += m * p.sin_coeffs[k] * std::cos(m * s);
    }
    return df;
  }
};

}  // namespace

ConvexBody make_ball(double r, int n, int dimension) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidGenerator, "ball radius must be positive");
  if (n < 12) throw Error(ErrorCode::InvalidGenerator, "ball mesh needs N >= 12");
  std::vector<Vector> pts = sphere_points(dimension, n);
  for (auto& p : pts) p *= r;
  return tag_as_mesh(ConvexBody::hull(pts));
}

ConvexBody make_ellipsoid(const Vector& semi_axes, int n) {
  if (semi_axes.size() != 2 && semi_axes.size() != 3)
    throw Error(ErrorCode::UnsupportedDimension, "ellipsoid needs 2 or 3 semi-axes");
  if ((semi_axes.array() <= 0.0).any())
    throw Error(ErrorCode::InvalidGenerator, "semi-axes must be positive");
  if (n < 12) throw Error(ErrorCode::InvalidGenerator, "ellipsoid mesh needs N >= 12");
  std::vector<Vector> pts = sphere_points(static_cast<int>(semi_axes.size()), n);
  for (auto& p : pts) p = p.cwiseProduct(semi_axes);
  return tag_as_mesh(ConvexBody::hull(pts));
}

ConvexBody make_box(const Vector& lo, const Vector& hi) {
  if (lo.size() != hi.size())
    throw Error(ErrorCode::DimensionMismatch, "box corners differ in dimension");
  if ((hi - lo).minCoeff() <= 0.0)
    throw Error(ErrorCode::InvalidGenerator, "box extents must be positive");
  const auto d = lo.size();
  std::vector<Vector> corners;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vector p(d);
    for (Eigen::Index k = 0; k < d; ++k) p[k] = (mask >> k) & 1 ? hi[k] : lo[k];
    corners.push_back(p);
  }
  return ConvexBody::hull(corners);
}

ConvexBody make_box(double a, double b, double c, bool centered) {
  const Vector ext{{a, b, c}};
  if (centered) return make_box(Vector(-0.5 * ext), Vector(0.5 * ext));
  return make_box(Vector::Zero(3), ext);
}

ConvexBody make_unit_cube(int dimension) {
  return make_box(Vector::Zero(dimension), Vector::Ones(dimension));
}

ConvexBody make_random_polytope(int n_vertices, std::uint64_t seed, int dimension) {
  if (n_vertices < dimension + 1)
    throw Error(ErrorCode::InvalidGenerator,
                "random polytope needs at least d + 1 vertices");
  for (int bump = 0; bump < kMaxSeedBumps; ++bump) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(bump));
    std::vector<Vector> pts;
    pts.reserve(static_cast<std::size_t>(n_vertices));
    for (int i = 0; i < n_vertices; ++i) {
      if (dimension == 2) {
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        pts.push_back(Vector{{std::cos(a), std::sin(a)}});
      } else {
        const double z = 2.0 * rng.uniform() - 1.0;
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.push_back(Vector{{r * std::cos(a), r * std::sin(a), z}});
      }
    }
    try {
      return ConvexBody::hull(pts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateBody) throw;
    }
  }
  throw Error(ErrorCode::InvalidGenerator, "random polytope stayed degenerate");
}

ConvexBody make_revolution(const std::vector<std::pair<double, double>>& profile,
                           int n_angular) {
  if (profile.size() < 2)
    throw Error(ErrorCode::InvalidGenerator, "profile needs at least two points");
  if (n_angular < 3)
    throw Error(ErrorCode::InvalidGenerator, "revolution needs N_angular >= 3");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].first < 0.0)
      throw Error(ErrorCode::NonConvexProfile, "profile radius must be non-negative");
    if (i > 0 && !(profile[i].second > profile[i - 1].second))
      throw Error(ErrorCode::NonConvexProfile,
                  "profile heights must be strictly increasing");
  }
  double scale = 0.0;
  for (const auto& [r, h] : profile) scale = std::max({scale, r, std::abs(h)});
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    const auto [r0, h0] = profile[i - 1];
    const auto [r1, h1] = profile[i];
    const auto [r2, h2] = profile[i + 1];
    const double chord = r0 + (r2 - r0) * (h1 - h0) / (h2 - h0);
    if (r1 < chord - 1e-12 * scale)
      throw Error(ErrorCode::NonConvexProfile,
                  "non-convex profile at point " + std::to_string(i));
  }
  std::vector<Vector> pts;
  for (const auto& [r, h] : profile) {
    if (r == 0.0) {
      pts.push_back(Vector{{0.0, 0.0, h}});
      continue;
    }
    for (int k = 0; k < n_angular; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n_angular;
      pts.push_back(Vector{{r * std::cos(a), r * std::sin(a), h}});
    }
  }
  return tag_as_mesh(ConvexBody::hull(pts));
}

ConvexBody make_zindler(const ZindlerParams& params, int n) {
  const double len = params.chord_length;
  if (!(len > 0.0)) throw Error(ErrorCode::InvalidGenerator, "zindler: L must be positive");
  if (n < 12 || n % 2 != 0)
    throw Error(ErrorCode::InvalidGenerator, "zindler: N must be even and >= 12");
  const Harmonics f{params};
  const double two_pi = 2.0 * std::numbers::pi;
  auto u = [](double s) { return Eigen::Vector2d(std::cos(s), std::sin(s)); };

  // Local convexity of the smooth curve: p' = f u + (L/2) u_perp, and
  // det(p', p'') = f^2 - (L/2) f' + L^2 / 4 must stay positive.
  const int checks = 16 * n;
  for (int i = 0; i < checks; ++i) {
    const double s = two_pi * i / checks;
    const double fs = f.value(s);
    if (fs * fs - 0.5 * len * f.derivative(s) + 0.25 * len * len <= 0.0)
      throw Error(ErrorCode::InvalidGenerator,
                  "zindler: curve is not convex near s = " + std::to_string(s));
  }

  // Integrate m' = f(s) u(s) by the midpoint rule. Each increment is parallel
  // to u at the half step, the bisector of consecutive chord directions, which
  // makes every vertex chord p_i p_{i+n/2} an exact area and perimeter
  // bisector of the sampled polygon.
  std::vector<Eigen::Vector2d> mid(static_cast<std::size_t>(n) + 1);
  mid[0] = Eigen::Vector2d::Zero();
  const double step = two_pi / n;
  for (int i = 0; i < n; ++i) {
    const double s = step * (i + 0.5);
    mid[static_cast<std::size_t>(i) + 1] =
        mid[static_cast<std::size_t>(i)] + step * f.value(s) * u(s);
  }
  if ((mid[static_cast<std::size_t>(n)] - mid[0]).norm() > 1e-9 * len)
    throw Error(ErrorCode::InvalidGenerator, "zindler: midpoint curve does not close");

  std::vector<Eigen::Vector2d> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pts.push_back(mid[static_cast<std::size_t>(i)] + 0.5 * len * u(step * i));

  double turning = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d e0 = pts[i] - pts[(i + n - 1) % n];
    const Eigen::Vector2d e1 = pts[(i + 1) % n] - pts[i];
    const double cr = e0.x() * e1.y() - e0.y() * e1.x();
    if (cr <= 0.0)
      throw Error(ErrorCode::InvalidGenerator,
                  "zindler: sampled polygon is not convex at vertex " + std::to_string(i));
    turning += std::atan2(cr, e0.dot(e1));
  }
  if (std::abs(turning - two_pi) > 1e-6)
    throw Error(ErrorCode::InvalidGenerator, "zindler: curve self-intersects");

  return ConvexBody::from_polygon({std::move(pts)}).with_mesh_tag(n);
}

ConvexBody make_prism(const ConvexBody& base, double length) {
  if (base.dimension() != 2)
    throw Error(ErrorCode::DimensionMismatch, "prism base must be a polygon");
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidGenerator, "prism length must be positive");
  const auto& v = base.polygon()->vertices;
  const int n = static_cast<int>(v.size());
  detail::Polyhedron p;
  for (const auto& q : v) p.vertices.emplace_back(q.x(), q.y(), 0.0);
  for (const auto& q : v) p.vertices.emplace_back(q.x(), q.y(), length);
  detail::Face bottom, top;
  for (int i = n - 1; i >= 0; --i) bottom.loop.push_back(i);
  for (int i = 0; i < n; ++i) top.loop.push_back(n + i);
  bottom.normal = -Eigen::Vector3d::UnitZ();
  bottom.offset = 0.0;
  top.normal = Eigen::Vector3d::UnitZ();
  top.offset = length;
  p.faces.push_back(bottom);
  p.faces.push_back(top);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    detail::Face side;
    side.loop = {i, j, n + j, n + i};
    const Eigen::Vector2d e = v[j] - v[i];
    const Eigen::Vector2d normal = Eigen::Vector2d(e.y(), -e.x()).normalized();
    side.normal = Eigen::Vector3d(normal.x(), normal.y(), 0.0);
    side.offset = normal.dot(v[i]);
    p.faces.push_back(std::move(side));
  }
  return ConvexBody::from_polyhedron(std::move(p)).with_mesh_tag(base.mesh_facets());
}

ConvexBody make_body(const GeneratorSpec& spec) {
  const int dim = static_cast<int>(param(spec, "dimension", 3));
  if (spec.name == "ball") {
    const double r = param(spec, "r", 1.0);
    const int n = spec.resolution > 0 ? spec.resolution : (dim == 2 ? 4096 : 2000);
    return make_ball(r, n, dim);
  }
  if (spec.name == "ellipsoid") {
    std::vector<double> axes = param_list(spec, "semi_axes");
    if (axes.empty()) {
      axes = {param(spec, "a", 1.0), param(spec, "b", 1.0)};
      if (dim == 3) axes.push_back(param(spec, "c", 1.0));
    }
    const int n = spec.resolution > 0 ? spec.resolution
                                      : (axes.size() == 2 ? 4096 : 2000);
    return make_ellipsoid(Eigen::Map<const Vector>(axes.data(),
                                                   static_cast<Eigen::Index>(axes.size())),
                          n);
  }
  if (spec.name == "box") {
    const double a = param(spec, "a", 1.0), b = param(spec, "b", 1.0),
                 c = param(spec, "c", 1.0);
    require_positive(spec, "a", a);
    require_positive(spec, "b", b);
    require_positive(spec, "c", c);
    return make_box(a, b, c, param(spec, "centered", 1.0) != 0.0);
  }
  if (spec.name == "cube") return make_unit_cube(dim);
  if (spec.name == "random_polytope") {
    const double n = param(spec, "n_vertices", 30.0);
    const double seed = param(spec, "seed", 1.0);
    if (seed < 0.0 || seed != std::floor(seed))
      throw Error(ErrorCode::InvalidGenerator,
                  "generator 'random_polytope': seed must be a non-negative integer");
    return make_random_polytope(static_cast<int>(n), static_cast<std::uint64_t>(seed), dim);
  }
  if (spec.name == "revolution") {
    const auto flat = param_list(spec, "profile");
    if (flat.size() < 4 || flat.size() % 2 != 0)
      throw Error(ErrorCode::InvalidGenerator,
                  "generator 'revolution': profile must be a list of [radius, height] pairs");
    std::vector<std::pair<double, double>> profile;
    for (std::size_t i = 0; i < flat.size(); i += 2) profile.emplace_back(flat[i], flat[i + 1]);
    return make_revolution(profile, spec.resolution > 0 ? spec.resolution : 256);
  }
  if (spec.name == "zindler") {
    ZindlerParams z;
    z.chord_length = param(spec, "L", 2.0);
    z.cos_coeffs = param_list(spec, "cos");
    z.sin_coeffs = param_list(spec, "sin");
    return make_zindler(z, spec.resolution > 0 ? spec.resolution : 4096);
  }
  throw Error(ErrorCode::InvalidGenerator, "unknown generator '" + spec.name + "'");
}

}  // namespace buoyancy
