#include "buoyancy/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include <Eigen/Geometry>

#include "detail/hull.hpp"
#include "detail/measure.hpp"

namespace buoyancy {

namespace {

void require_direction(const ConvexBody& body, const Vector& xi) {
  if (xi.size() != body.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                "direction has dimension " + std::to_string(xi.size()) +
                    ", body has " + std::to_string(body.dimension()));
  if (std::abs(xi.norm() - 1.0) > kGeomRelTol)
    throw Error(ErrorCode::InvalidInput, "direction is not a unit vector");
}

Eigen::Vector2d as2(const Vector& v) { return {v[0], v[1]}; }
Eigen::Vector3d as3(const Vector& v) { return {v[0], v[1], v[2]}; }

// Sutherland-Hodgman against {n . p <= t}; no snapping, continuous in t.
template <typename P, typename N>
void clip_loop(const std::vector<P>& in, const N& n, double t,
               std::vector<P>& out) {
  out.clear();
  const std::size_t m = in.size();
  if (m == 0) return;
  double sa = n.dot(in[m - 1]) - t;
  for (std::size_t i = 0; i < m; ++i) {
    const P& a = in[(i + m - 1) % m];
    const P& b = in[i];
    const double sb = n.dot(b) - t;
    if ((sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0))
      out.push_back(a + (b - a) * (sa / (sa - sb)));
    if (sb <= 0.0) out.push_back(b);
    sa = sb;
  }
}

std::optional<ConvexBody> clip_polygon(const ConvexBody& body,
                                       const Eigen::Vector2d& n, double t) {
  const auto& in = body.polygon()->vertices;
  const double eps = body.geom_tolerance();
  std::vector<double> s(in.size());
  bool any_below = false, any_above = false;
  for (std::size_t i = 0; i < in.size(); ++i) {
    s[i] = n.dot(in[i]) - t;
    if (std::abs(s[i]) <= eps) s[i] = 0.0;
    any_below |= s[i] < 0.0;
    any_above |= s[i] > 0.0;
  }
  if (!any_below) return std::nullopt;
  if (!any_above) return body;

  std::vector<Eigen::Vector2d> out;
  const std::size_t m = in.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    if (s[i] <= 0.0) {
      out.push_back(s[i] == 0.0 ? Eigen::Vector2d(in[i] - (n.dot(in[i]) - t) * n)
                                : in[i]);
    }
    if ((s[i] < 0.0 && s[j] > 0.0) || (s[i] > 0.0 && s[j] < 0.0))
      out.push_back(in[i] + (in[j] - in[i]) * (s[i] / (s[i] - s[j])));
  }
  std::vector<Eigen::Vector2d> dedup;
  for (const auto& p : out) {
    if (dedup.empty() || (p - dedup.back()).norm() > eps) dedup.push_back(p);
  }
  while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= eps)
    dedup.pop_back();
  if (dedup.size() < 3) return std::nullopt;
  const auto mom = detail::polygon_moments(dedup);
  if (!(mom.area > eps * eps)) return std::nullopt;
  return ConvexBody::from_polygon({std::move(dedup)})
      .with_mesh_tag(body.mesh_facets());
}

std::optional<ConvexBody> clip_polyhedron(const ConvexBody& body,
                                          const Eigen::Vector3d& n, double t) {
  const auto& in = *body.polyhedron();
  const double eps = body.geom_tolerance();
  const std::size_t nv = in.vertices.size();
  std::vector<double> s(nv);
  bool any_below = false, any_above = false;
  for (std::size_t i = 0; i < nv; ++i) {
    s[i] = n.dot(in.vertices[i]) - t;
    if (std::abs(s[i]) <= eps) s[i] = 0.0;
    any_below |= s[i] < 0.0;
    any_above |= s[i] > 0.0;
  }
  if (!any_below) return std::nullopt;
  if (!any_above) return body;

  detail::Polyhedron out;
  std::vector<int> remap(nv, -1);
  std::vector<char> on_plane;
  auto keep_vertex = [&](std::size_t i) {
    if (remap[i] < 0) {
      remap[i] = static_cast<int>(out.vertices.size());
      const auto& v = in.vertices[i];
      out.vertices.push_back(s[i] == 0.0 ? Eigen::Vector3d(v - (n.dot(v) - t) * n)
                                         : v);
      on_plane.push_back(s[i] == 0.0);
    }
    return remap[i];
  };
  std::unordered_map<std::uint64_t, int> edge_points;
  auto edge_point = [&](int a, int b) {
    const auto key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
                     static_cast<std::uint32_t>(std::max(a, b));
    auto [it, inserted] = edge_points.try_emplace(key, -1);
    if (inserted) {
      // Interpolate from the lower index so both faces get the same point.
      const int lo = std::min(a, b), hi = std::max(a, b);
      const auto& p = in.vertices[lo];
      const auto& q = in.vertices[hi];
      it->second = static_cast<int>(out.vertices.size());
      out.vertices.push_back(p + (q - p) * (s[lo] / (s[lo] - s[hi])));
      on_plane.push_back(true);
    }
    return it->second;
  };

  for (const auto& face : in.faces) {
    detail::Face f;
    const std::size_t m = face.loop.size();
    for (std::size_t k = 0; k < m; ++k) {
      const int a = face.loop[k], b = face.loop[(k + 1) % m];
      if (s[a] <= 0.0) f.loop.push_back(keep_vertex(a));
      if ((s[a] < 0.0 && s[b] > 0.0) || (s[a] > 0.0 && s[b] < 0.0))
        f.loop.push_back(edge_point(a, b));
    }
    std::vector<int> loop;
    for (int v : f.loop) {
      if (loop.empty() || loop.back() != v) loop.push_back(v);
    }
    while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
    if (loop.size() < 3) continue;
    f.loop = std::move(loop);
    f.normal = face.normal;
    f.offset = face.offset;
    out.faces.push_back(std::move(f));
  }

  // Cap face: all on-plane vertices, ordered by angle about their mean.
  std::vector<int> cap;
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    if (on_plane[i]) cap.push_back(static_cast<int>(i));
  if (cap.size() >= 3) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int v : cap) mean += out.vertices[v];
    mean /= static_cast<double>(cap.size());
    Eigen::Vector3d u = Eigen::Vector3d::UnitX();
    if (std::abs(n.x()) > 0.9) u = Eigen::Vector3d::UnitY();
    u = (u - u.dot(n) * n).normalized();
    const Eigen::Vector3d w = n.cross(u);
    std::vector<std::pair<double, int>> angular;
    for (int v : cap) {
      const Eigen::Vector3d r = out.vertices[v] - mean;
      angular.emplace_back(std::atan2(r.dot(w), r.dot(u)), v);
    }
    std::sort(angular.begin(), angular.end());
    detail::Face f;
    for (auto [angle, v] : angular) {
      if (!f.loop.empty() &&
          (out.vertices[v] - out.vertices[f.loop.back()]).norm() <= eps)
        continue;
      f.loop.push_back(v);
    }
    while (f.loop.size() > 1 &&
           (out.vertices[f.loop.front()] - out.vertices[f.loop.back()]).norm() <=
               eps)
      f.loop.pop_back();
    if (f.loop.size() >= 3) {
      f.normal = n;
      f.offset = t;
      out.faces.push_back(std::move(f));
    }
  }

  // Drop vertices no face references.
  std::vector<int> used(out.vertices.size(), -1);
  detail::Polyhedron compact;
  for (auto& f : out.faces) {
    for (int& v : f.loop) {
      if (used[v] < 0) {
        used[v] = static_cast<int>(compact.vertices.size());
        compact.vertices.push_back(out.vertices[v]);
      }
      v = used[v];
    }
  }
  compact.faces = std::move(out.faces);
  if (compact.faces.size() < 4) return std::nullopt;
  const auto mom = detail::polyhedron_moments(compact);
  if (!(mom.volume > eps * eps * eps)) return std::nullopt;
  return ConvexBody::from_polyhedron(std::move(compact))
      .with_mesh_tag(body.mesh_facets());
}

template <bool WithCentroid>
CapMoments cap_moments_impl(const ConvexBody& body, const Vector& xi,
                            double t) {
  CapMoments out;
  if (const auto* pg = body.polygon()) {
    const Eigen::Vector2d n = as2(xi);
    thread_local std::vector<Eigen::Vector2d> clipped;
    clip_loop(pg->vertices, n, t, clipped);
    const auto m = detail::polygon_moments(clipped);
    out.volume = std::max(0.0, m.area);
    out.centroid = Vector{{m.centroid.x(), m.centroid.y()}};
    return out;
  }

  const auto& ph = *body.polyhedron();
  const Eigen::Vector3d n = as3(xi);
  const Eigen::Vector3d c0 = as3(body.centroid());
  // Apex on the cutting plane: the cap face contributes nothing.
  const Eigen::Vector3d o = c0 + (t - n.dot(c0)) * n;

  thread_local std::vector<double> s;
  thread_local std::vector<Eigen::Vector3d> loop, clipped;
  s.resize(ph.vertices.size());
  for (std::size_t i = 0; i < ph.vertices.size(); ++i)
    s[i] = n.dot(ph.vertices[i]) - t;

  double six_vol = 0.0;
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  auto fan = [&](const auto& pts, std::size_t count, auto&& at) {
    const Eigen::Vector3d a = at(pts, 0) - o;
    for (std::size_t i = 1; i + 1 < count; ++i) {
      const Eigen::Vector3d b = at(pts, i) - o;
      const Eigen::Vector3d c = at(pts, i + 1) - o;
      const double det = a.dot(b.cross(c));
      six_vol += det;
      if constexpr (WithCentroid) acc += det * (a + b + c);
    }
  };

  for (const auto& face : ph.faces) {
    bool below = false, above = false;
    for (int v : face.loop) {
      below |= s[v] <= 0.0;
      above |= s[v] > 0.0;
    }
    if (!below) continue;
    if (!above) {
      fan(face.loop, face.loop.size(),
          [&](const auto& l, std::size_t i) -> const Eigen::Vector3d& {
            return ph.vertices[l[i]];
          });
      continue;
    }
    loop.clear();
    for (int v : face.loop) loop.push_back(ph.vertices[v]);
    clip_loop(loop, n, t, clipped);
    fan(clipped, clipped.size(),
        [](const auto& l, std::size_t i) -> const Eigen::Vector3d& {
          return l[i];
        });
  }
  out.volume = std::max(0.0, six_vol / 6.0);
  if constexpr (WithCentroid) {
    const Eigen::Vector3d c =
        six_vol != 0.0 ? Eigen::Vector3d(o + acc / (4.0 * six_vol)) : o;
    out.centroid = Vector{{c.x(), c.y(), c.z()}};
  }
  return out;
}

}  // namespace

std::vector<Vector> orthonormal_complement(const Vector& xi) {
  const auto d = xi.size();
  Eigen::Index drop = 0;
  xi.cwiseAbs().maxCoeff(&drop);
  std::vector<Vector> frame;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j == drop) continue;
    Vector v = Vector::Unit(d, j);
    v -= v.dot(xi) * xi;
    for (const auto& e : frame) v -= v.dot(e) * e;
    frame.push_back(v.normalized());
  }
  return frame;
}

std::optional<ConvexBody> clip(const ConvexBody& body, const HalfSpace& hs) {
  require_direction(body, hs.normal);
  if (body.dimension() == 2) return clip_polygon(body, as2(hs.normal), hs.offset);
  return clip_polyhedron(body, as3(hs.normal), hs.offset);
}

double volume(const ConvexBody& body) { return body.volume(); }

Vector centroid(const ConvexBody& body) {
  if (!(body.volume() > 0.0))
    throw Error(ErrorCode::DegenerateBody, "degenerate body");
  return body.centroid();
}

CapMoments cap_moments(const ConvexBody& body, const Vector& xi, double t) {
  require_direction(body, xi);
  return cap_moments_impl<true>(body, xi, t);
}

double cap_volume(const ConvexBody& body, const Vector& xi, double t) {
  require_direction(body, xi);
  return cap_moments_impl<false>(body, xi, t).volume;
}

Section section(const ConvexBody& body, const HalfSpace& hs) {
  require_direction(body, hs.normal);
  const Vector& xi = hs.normal;
  const double t = hs.offset;
  const double eps = body.geom_tolerance();

  Section sec;
  sec.xi = xi;
  sec.offset = t;
  sec.frame = orthonormal_complement(xi);
  const int d = body.dimension();

  auto to_ambient = [&](const Vector& u) {
    Vector p = t * xi;
    for (int j = 0; j < d - 1; ++j) p += u[j] * sec.frame[j];
    return p;
  };
  auto empty = [] {
    return Error(ErrorCode::EmptySection, "empty section");
  };

  if (d == 2) {
    const auto& v = body.polygon()->vertices;
    const Eigen::Vector2d n = as2(xi);
    const Eigen::Vector2d eta = as2(sec.frame[0]);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool below = false, above = false;
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % m];
      double sa = n.dot(a) - t, sb = n.dot(b) - t;
      if (std::abs(sa) <= eps) sa = 0.0;
      if (std::abs(sb) <= eps) sb = 0.0;
      below |= sa < 0.0;
      above |= sa > 0.0;
      auto take = [&](const Eigen::Vector2d& p) {
        const double u = eta.dot(p);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
      };
      if (sa == 0.0) take(a);
      if ((sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0))
        take(a + (b - a) * (sa / (sa - sb)));
    }
    if (!below || !above || !(hi - lo > eps)) throw empty();
    const double len = hi - lo;
    sec.vertices = {Vector::Constant(1, lo), Vector::Constant(1, hi)};
    sec.area = len;
    sec.centroid = to_ambient(Vector::Constant(1, 0.5 * (lo + hi)));
    sec.moments = Matrix::Constant(1, 1, len * len * len / 12.0);
    return sec;
  }

  const auto& ph = *body.polyhedron();
  const Eigen::Vector3d n = as3(xi);
  const Eigen::Vector3d e1 = as3(sec.frame[0]);
  const Eigen::Vector3d e2 = as3(sec.frame[1]);
  std::vector<double> s(ph.vertices.size());
  bool below = false, above = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = n.dot(ph.vertices[i]) - t;
    if (std::abs(s[i]) <= eps) s[i] = 0.0;
    below |= s[i] < 0.0;
    above |= s[i] > 0.0;
  }
  if (!below || !above) throw empty();

  std::vector<Eigen::Vector2d> pts;
  auto take = [&](const Eigen::Vector3d& p) {
    pts.emplace_back(e1.dot(p), e2.dot(p));
  };
  for (const auto& face : ph.faces) {
    const std::size_t m = face.loop.size();
    for (std::size_t k = 0; k < m; ++k) {
      const int a = face.loop[k], b = face.loop[(k + 1) % m];
      if (s[a] == 0.0) take(ph.vertices[a]);
      if ((s[a] < 0.0 && s[b] > 0.0) || (s[a] > 0.0 && s[b] < 0.0)) {
        const int lo = std::min(a, b), hi = std::max(a, b);
        const auto& p = ph.vertices[lo];
        const auto& q = ph.vertices[hi];
        take(p + (q - p) * (s[lo] / (s[lo] - s[hi])));
      }
    }
  }
  auto poly = detail::convex_hull_2d(std::move(pts), 1e-3 * eps);
  if (poly.vertices.size() < 3) throw empty();
  const auto mom = detail::polygon_moments(poly.vertices);
  if (!(mom.area > eps * eps)) throw empty();
  const auto second = detail::polygon_second_moments(poly.vertices, mom.centroid);

  for (const auto& p : poly.vertices) sec.vertices.push_back(Vector{{p.x(), p.y()}});
  sec.area = mom.area;
  sec.centroid = to_ambient(Vector{{mom.centroid.x(), mom.centroid.y()}});
  sec.moments.resize(2, 2);
  sec.moments << second[0], second[1], second[1], second[2];
  return sec;
}

double moment_about_axis(const Section& sec, const Vector& eta) {
  if (eta.size() != sec.xi.size())
    throw Error(ErrorCode::DimensionMismatch, "axis direction has wrong dimension");
  if (std::abs(eta.norm() - 1.0) > kGeomRelTol ||
      std::abs(eta.dot(sec.xi)) > kGeomRelTol)
    throw Error(ErrorCode::InvalidInput,
                "axis direction must be a unit vector orthogonal to xi");
  Vector a(static_cast<Eigen::Index>(sec.frame.size()));
  for (std::size_t j = 0; j < sec.frame.size(); ++j) a[j] = eta.dot(sec.frame[j]);
  return a.dot(sec.moments * a);
}

}  // namespace buoyancy
