#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "buoyancy/zoo.hpp"

using namespace buoyancy;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

double polygon_area(const std::vector<Vector>& pts, std::size_t from, std::size_t to) {
  double a = 0.0;
  for (std::size_t i = from; i < to; ++i) {
    const Vector& p = pts[i];
    const Vector& q = pts[i + 1];
    a += p[0] * q[1] - q[0] * p[1];
  }
  a += pts[to][0] * pts[from][1] - pts[from][0] * pts[to][1];
  return 0.5 * a;
}

}  // namespace

TEST_SUITE("zoo") {

TEST_CASE("SplitMix64 reference values") {
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
  CHECK(rng.next() == 4593380528125082431ULL);
  CHECK(rng.next() == 16408922859458223821ULL);
  SplitMix64 u(0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}

TEST_CASE("ball meshes") {
  const ConvexBody b1 = make_ball(1.0, 2000);
  CHECK(b1.volume() == doctest::Approx(4.0 * oracle::pi() / 3.0).epsilon(0.01));
  CHECK(b1.centroid().norm() < 1e-12);
  CHECK(b1.is_mesh());
  const ConvexBody b2 = make_ball(2.0, 2000);
  CHECK(b2.volume() == doctest::Approx(8.0 * b1.volume()).epsilon(1e-12));
  for (const auto& v : b1.vertices()) CHECK(v.norm() == doctest::Approx(1.0));
  const ConvexBody disk = make_ball(1.0, 4096, 2);
  CHECK(std::abs(disk.volume() - oracle::pi()) < 1e-5);
  CHECK(disk.vertices().size() == 4096);
  CHECK(code_of([] { make_ball(-1.0, 100); }) == ErrorCode::InvalidGenerator);
  CHECK(code_of([] { make_ball(1.0, 100, 4); }) == ErrorCode::UnsupportedDimension);
}

TEST_CASE("ellipsoids and boxes") {
  const ConvexBody e = make_ellipsoid(Vector{{2.0, 1.0, 0.5}}, 2000);
  const ConvexBody b = make_ball(1.0, 2000);
  CHECK(e.volume() == doctest::Approx(b.volume()).epsilon(1e-12));
  const ConvexBody box = make_box(2.0, 3.0, 4.0);
  CHECK(box.volume() == doctest::Approx(24.0));
  CHECK(box.centroid().norm() < 1e-14);
  const ConvexBody corner = make_box(2.0, 3.0, 4.0, false);
  CHECK((corner.centroid() - Vector{{1.0, 1.5, 2.0}}).norm() < 1e-14);
  CHECK(code_of([] { make_box(0.0, 1.0, 1.0); }) == ErrorCode::InvalidGenerator);
}

TEST_CASE("solids of revolution") {
  const int n = 256;
  const double polygon = 0.5 * n * std::sin(2.0 * oracle::pi() / n);
  const ConvexBody cyl = make_revolution({{1.0, 0.0}, {1.0, 2.0}}, n);
  CHECK(cyl.volume() == doctest::Approx(2.0 * polygon).epsilon(1e-12));
  CHECK(cyl.centroid()[2] == doctest::Approx(1.0));
  const ConvexBody cone = make_revolution({{1.0, 0.0}, {0.0, 1.0}}, n);
  CHECK(cone.volume() == doctest::Approx(polygon / 3.0).epsilon(1e-12));
  CHECK(cone.centroid()[2] == doctest::Approx(0.25));
  CHECK(code_of([] { make_revolution({{1.0, 0.0}, {0.2, 1.0}, {1.0, 2.0}}, 64); }) ==
        ErrorCode::NonConvexProfile);
  CHECK(code_of([] { make_revolution({{1.0, 0.0}}, 64); }) == ErrorCode::InvalidGenerator);
}

TEST_CASE("random polytopes are reproducible") {
  const ConvexBody a = make_random_polytope(30, 7);
  const ConvexBody b = make_random_polytope(30, 7);
  const ConvexBody c = make_random_polytope(30, 8);
  REQUIRE(a.vertices().size() == b.vertices().size());
  for (std::size_t i = 0; i < a.vertices().size(); ++i)
    CHECK(a.vertices()[i] == b.vertices()[i]);
  CHECK(a.volume() != c.volume());
  for (const auto& v : a.vertices()) CHECK(v.norm() == doctest::Approx(1.0));
  const ConvexBody p2 = make_random_polytope(12, 3, 2);
  CHECK(p2.dimension() == 2);
}

TEST_CASE("prisms") {
  const ConvexBody base = make_unit_cube(2);
  const ConvexBody prism = make_prism(base, 3.0);
  CHECK(prism.volume() == doctest::Approx(3.0));
  CHECK((prism.centroid() - Vector{{0.5, 0.5, 1.5}}).norm() < 1e-14);
  CHECK(code_of([&] { make_prism(prism, 1.0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("Zindler curve without harmonics is a circle") {
  const ConvexBody z = make_zindler(ZindlerParams{}, 64);
  for (const auto& v : z.vertices()) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Zindler chords bisect perimeter and area") {
  ZindlerParams zp;
  zp.cos_coeffs = {0.1};
  zp.sin_coeffs = {0.0, 0.03};
  const int n = 2048;
  const ConvexBody z = make_zindler(zp, n);
  const auto& pts = z.vertices();
  REQUIRE(pts.size() == static_cast<std::size_t>(n));

  std::vector<double> arc(pts.size() + 1, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    arc[i + 1] = arc[i] + (pts[(i + 1) % pts.size()] - pts[i]).norm();
  const double perimeter = arc.back();
  const double area = std::abs(polygon_area(pts, 0, pts.size() - 1));
  CHECK(area == doctest::Approx(z.volume()).epsilon(1e-12));

  double rmin = 1e300, rmax = 0.0;
  for (std::size_t i = 0; i < pts.size() / 2; i += 37) {
    const std::size_t j = i + pts.size() / 2;
    CHECK((pts[j] - pts[i]).norm() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(arc[j] - arc[i] == doctest::Approx(0.5 * perimeter).epsilon(1e-9));
    CHECK(std::abs(polygon_area(pts, i, j)) == doctest::Approx(0.5 * area).epsilon(1e-9));
  }
  for (const auto& v : pts) {
    rmin = std::min(rmin, (v - z.centroid()).norm());
    rmax = std::max(rmax, (v - z.centroid()).norm());
  }
  CHECK(rmax / rmin > 1.01);
}

TEST_CASE("bad Zindler parameters") {
  ZindlerParams steep;
  steep.cos_coeffs = {0.9};
  CHECK(code_of([&] { make_zindler(steep, 512); }) == ErrorCode::InvalidGenerator);
  ZindlerParams neg;
  neg.chord_length = -1.0;
  CHECK(code_of([&] { make_zindler(neg, 512); }) == ErrorCode::InvalidGenerator);
  CHECK(code_of([] { make_zindler(ZindlerParams{}, 513); }) == ErrorCode::InvalidGenerator);
}

TEST_CASE("generator dispatch") {
  GeneratorSpec s;
  s.name = "cube";
  CHECK(make_body(s).volume() == doctest::Approx(1.0));
  s.name = "box";
  s.params = {{"a", {2.0}}, {"b", {1.0}}, {"c", {0.5}}};
  CHECK(make_body(s).volume() == doctest::Approx(1.0));
  s.name = "revolution";
  s.params = {{"profile", {1.0, 0.0, 1.0, 1.0}}};
  s.resolution = 32;
  CHECK(make_body(s).volume() == doctest::Approx(16.0 * std::sin(oracle::pi() / 16.0)));
  s.name = "random_polytope";
  s.params = {{"seed", {1.5}}};
  CHECK(code_of([&] { make_body(s); }) == ErrorCode::InvalidGenerator);
  s.name = "teapot";
  CHECK(code_of([&] { make_body(s); }) == ErrorCode::InvalidGenerator);
}

}  // TEST_SUITE
