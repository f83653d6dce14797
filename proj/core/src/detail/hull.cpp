#include "detail/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include <Eigen/Geometry>

namespace buoyancy::detail {

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
              const Eigen::Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

struct Triangle {
  int a, b, c;
  Eigen::Vector3d normal;
  double offset;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

Triangle make_triangle(const std::vector<Eigen::Vector3d>& p, int a, int b,
                       int c) {
  Eigen::Vector3d n = (p[b] - p[a]).cross(p[c] - p[a]);
  n.normalize();
  return {a, b, c, n, n.dot(p[a])};
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Polygon convex_hull_2d(std::vector<Eigen::Vector2d> points, double eps) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [eps](const auto& a, const auto& b) {
                             return (a - b).norm() <= eps;
                           }),
               points.end());
  if (points.size() < 3) return {};

  // Cross products scale with length^2; compare against eps * edge length.
  auto turns_left = [eps](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b) {
    return cross2(o, a, b) > eps * (b - o).norm();
  };

  std::vector<Eigen::Vector2d> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], points[i])) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return {};
  return {std::move(hull)};
}

Eigen::Vector3d newell_normal(const std::vector<Eigen::Vector3d>& vertices,
                              const std::vector<int>& loop) {
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  const std::size_t m = loop.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = vertices[loop[i]];
    const auto& b = vertices[loop[(i + 1) % m]];
    n.x() += (a.y() - b.y()) * (a.z() + b.z());
    n.y() += (a.z() - b.z()) * (a.x() + b.x());
    n.z() += (a.x() - b.x()) * (a.y() + b.y());
  }
  return n;
}

Polyhedron convex_hull_3d(const std::vector<Eigen::Vector3d>& points,
                          double eps) {
  const int n = static_cast<int>(points.size());
  if (n < 4) return {};

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (points[i].x() < points[i0].x()) i0 = i;
  int i1 = i0;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = (points[i] - points[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (best <= eps) return {};
  const Eigen::Vector3d axis = (points[i1] - points[i0]).normalized();
  int i2 = i0;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d v = points[i] - points[i0];
    double d = (v - v.dot(axis) * axis).norm();
    if (d > best) best = d, i2 = i;
  }
  if (best <= eps) return {};
  const Eigen::Vector3d plane_n =
      (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
  int i3 = i0;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = std::abs((points[i] - points[i0]).dot(plane_n));
    if (d > best) best = d, i3 = i;
  }
  if (best <= eps) return {};

  std::vector<Triangle> tris;
  std::unordered_map<std::uint64_t, int> edge_owner;
  auto add = [&](int a, int b, int c) {
    tris.push_back(make_triangle(points, a, b, c));
    const int id = static_cast<int>(tris.size()) - 1;
    edge_owner[edge_key(a, b)] = id;
    edge_owner[edge_key(b, c)] = id;
    edge_owner[edge_key(c, a)] = id;
  };

  if ((points[i3] - points[i0]).dot(plane_n) < 0.0) {
    add(i0, i1, i2);
    add(i0, i3, i1);
    add(i1, i3, i2);
    add(i2, i3, i0);
  } else {
    add(i0, i2, i1);
    add(i0, i1, i3);
    add(i1, i2, i3);
    add(i2, i0, i3);
  }

  std::vector<int> alive = {0, 1, 2, 3};
  std::vector<int> visible;
  std::vector<std::pair<int, int>> horizon;
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.clear();
    for (int f : alive) {
      if (tris[f].normal.dot(points[p]) - tris[f].offset > eps)
        visible.push_back(f);
    }
    if (visible.empty()) continue;
    for (int f : visible) tris[f].alive = false;
    horizon.clear();
    for (int f : visible) {
      const int v[3] = {tris[f].a, tris[f].b, tris[f].c};
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        auto it = edge_owner.find(edge_key(b, a));
        if (it != edge_owner.end() && tris[it->second].alive)
          horizon.emplace_back(a, b);
      }
    }
    for (int f : visible) {
      const int v[3] = {tris[f].a, tris[f].b, tris[f].c};
      for (int e = 0; e < 3; ++e) {
        auto it = edge_owner.find(edge_key(v[e], v[(e + 1) % 3]));
        if (it != edge_owner.end() && it->second == f) edge_owner.erase(it);
      }
    }
    for (auto [a, b] : horizon) add(a, b, p);
    alive.erase(std::remove_if(alive.begin(), alive.end(),
                               [&](int f) { return !tris[f].alive; }),
                alive.end());
    for (std::size_t f = tris.size() - horizon.size(); f < tris.size(); ++f)
      alive.push_back(static_cast<int>(f));
  }

  // Merge coplanar neighbours into polygon faces.
  UnionFind groups(tris.size());
  for (int f : alive) {
    const int v[3] = {tris[f].a, tris[f].b, tris[f].c};
    for (int e = 0; e < 3; ++e) {
      auto it = edge_owner.find(edge_key(v[(e + 1) % 3], v[e]));
      if (it == edge_owner.end()) continue;
      const Triangle& g = tris[it->second];
      if (!g.alive || tris[f].normal.dot(g.normal) <= 0.0) continue;
      const double da = std::abs(tris[f].normal.dot(points[g.a]) - tris[f].offset);
      const double db = std::abs(tris[f].normal.dot(points[g.b]) - tris[f].offset);
      const double dc = std::abs(tris[f].normal.dot(points[g.c]) - tris[f].offset);
      if (std::max({da, db, dc}) <= eps) groups.unite(f, it->second);
    }
  }

  std::unordered_map<std::size_t, std::vector<int>> members;
  std::vector<std::size_t> order;
  for (int f : alive) {
    auto root = groups.find(f);
    auto [it, inserted] = members.try_emplace(root);
    if (inserted) order.push_back(root);
    it->second.push_back(f);
  }

  Polyhedron out;
  std::vector<int> remap(n, -1);
  for (std::size_t root : order) {
    const auto& group = members[root];
    Eigen::Vector3d normal = Eigen::Vector3d::Zero();
    std::vector<int> verts;
    for (int f : group) {
      const Triangle& t = tris[f];
      normal += (points[t.b] - points[t.a]).cross(points[t.c] - points[t.a]);
      verts.insert(verts.end(), {t.a, t.b, t.c});
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    normal.normalize();

    // Order the face boundary by angle about its vertex mean.
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int v : verts) mean += points[v];
    mean /= static_cast<double>(verts.size());
    Eigen::Vector3d u = (points[verts[0]] - mean);
    u = (u - u.dot(normal) * normal).normalized();
    const Eigen::Vector3d w = normal.cross(u);
    std::vector<std::pair<double, int>> angular;
    angular.reserve(verts.size());
    for (int v : verts) {
      const Eigen::Vector3d r = points[v] - mean;
      angular.emplace_back(std::atan2(r.dot(w), r.dot(u)), v);
    }
    std::sort(angular.begin(), angular.end());

    Face face;
    double offset = 0.0;
    for (auto [angle, v] : angular) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(points[v]);
      }
      face.loop.push_back(remap[v]);
      offset += normal.dot(points[v]);
    }
    face.normal = normal;
    face.offset = offset / static_cast<double>(verts.size());
    out.faces.push_back(std::move(face));
  }
  return out;
}

}  // namespace buoyancy::detail
