#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "buoyancy/directions.hpp"
#include "buoyancy/flotation.hpp"
#include "buoyancy/kernel.hpp"
#include "buoyancy/zoo.hpp"

using namespace buoyancy;

TEST_SUITE("flotation") {

TEST_CASE("cube waterline at half volume") {
  const ConvexBody cube = make_unit_cube(3);
  const Waterline w = find_waterline(cube, Vector{{0.0, 0.0, 1.0}}, 0.5);
  CHECK(w.t == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(w.achieved == doctest::Approx(0.5).epsilon(1e-10));
  const BuoyancyRecord r = buoyancy_center(cube, Vector{{0.0, 0.0, 1.0}}, 0.5);
  CHECK((r.center - Vector{{0.5, 0.5, 0.25}}).norm() < 1e-9);
  CHECK(r.residual < 1e-9);
}

TEST_CASE("cube waterline at other densities") {
  const ConvexBody cube = make_unit_cube(3);
  for (double rho : {0.1, 0.3, 0.77}) {
    const Waterline w = find_waterline(cube, Vector{{1.0, 0.0, 0.0}}, rho);
    CHECK(w.t == doctest::Approx(rho).epsilon(1e-9));
  }
  const Vector diag = Vector::Ones(3).normalized();
  const Waterline w = find_waterline(cube, diag, 1.0 / 6.0);
  CHECK(w.t == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("ball caps against the closed form") {
  const ConvexBody ball = make_ball(1.0, 4000);
  const double vol = ball.volume();
  CHECK(vol == doctest::Approx(4.0 * oracle::pi() / 3.0).epsilon(0.01));
  const Vector xi = Vector{{0.2, -0.5, 0.84}}.normalized();
  for (double rho : {0.2, 0.5, 0.8}) {
    const BuoyancyRecord r = buoyancy_center(ball, xi, rho * vol);
    const double h = oracle::cap_height(1.0, rho * 4.0 * oracle::pi() / 3.0);
    const double dist = oracle::cap_centroid_distance(1.0, h);
    CHECK((r.center - ball.centroid()).dot(-xi) == doctest::Approx(dist).epsilon(5e-3));
    CHECK(r.t == doctest::Approx(h - 1.0).epsilon(5e-3));
    CHECK(r.residual < default_equilibrium_tolerance(ball));
  }
  const BuoyancyRecord half = buoyancy_center(ball, xi, 0.5 * vol);
  CHECK((half.center - ball.centroid()).norm() == doctest::Approx(0.375).epsilon(3e-3));
}

TEST_CASE("density out of range") {
  const ConvexBody cube = make_unit_cube(3);
  for (double d : {0.0, -0.1, 1.0, 1.2}) {
    try {
      find_waterline(cube, Vector{{0.0, 0.0, 1.0}}, d);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DensityOutOfRange);
    }
  }
}

TEST_CASE("degenerate buoyancy line") {
  CHECK_THROWS_AS(residual_angle(Vector{{0.0, 0.0, 1.0}}, Vector::Zero(3), Vector::Zero(3), 1e-12),
                  Error);
  try {
    residual_angle(Vector{{0.0, 1.0}}, Vector{{1.0, 1.0}}, Vector{{1.0, 1.0}}, 1e-12);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateBuoyancyLine);
  }
}

TEST_CASE("complementary densities balance the mass") {
  const ConvexBody p = make_random_polytope(25, 4);
  SplitMix64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const Vector xi = oracle::random_unit(3, rng);
    const double delta = (0.1 + 0.8 * rng.uniform()) * p.volume();
    const BuoyancyRecord lo = buoyancy_center(p, xi, delta);
    const BuoyancyRecord hi = buoyancy_center(p, -xi, p.volume() - delta);
    CHECK(lo.t == doctest::Approx(-hi.t).epsilon(1e-8));
    const Vector mix = (delta * lo.center + (p.volume() - delta) * hi.center) / p.volume();
    CHECK((mix - p.centroid()).norm() < 1e-9);
    CHECK(lo.residual == doctest::Approx(hi.residual).epsilon(1e-6));
  }
}

TEST_CASE("rigid motions and scaling") {
  const ConvexBody p = make_random_polytope(30, 11);
  const Matrix q = oracle::random_rotation(3, 5);
  const Vector shift{{0.3, -1.0, 2.0}};
  const double scale = 1.7;
  const ConvexBody moved = p.transformed(q, shift, scale);
  const double vol_ratio = std::pow(scale, 3);
  SplitMix64 rng(2);
  for (int i = 0; i < 8; ++i) {
    const Vector xi = oracle::random_unit(3, rng);
    const double delta = 0.4 * p.volume();
    const BuoyancyRecord a = buoyancy_center(p, xi, delta);
    const BuoyancyRecord b = buoyancy_center(moved, q * xi, delta * vol_ratio);
    CHECK((b.center - (scale * q * a.center + shift)).norm() < 1e-8);
    CHECK(b.residual == doctest::Approx(a.residual).epsilon(1e-6).scale(1e-9));
  }
}

TEST_CASE("surface of centers of a centrally symmetric body") {
  const ConvexBody box = make_box(2.0, 1.0, 0.5);
  const auto dirs = fibonacci_directions(60);
  const SurfaceOfCenters s = sample_surface_of_centers(box, 0.3 * box.volume(), dirs);
  REQUIRE(s.centers.size() == dirs.size());
  Vector mean = Vector::Zero(3);
  const auto sym = symmetric_direction_grid(3, 30);
  const SurfaceOfCenters ss = sample_surface_of_centers(box, 0.3 * box.volume(), sym);
  for (const auto& c : ss.centers) mean += c;
  mean /= static_cast<double>(ss.centers.size());
  CHECK(mean.norm() < 1e-9);
  CHECK(ss.center.norm() < 1e-9);
  CHECK(s.max_deviation > 0.01);
}

TEST_CASE("sphere fit is exact on sphere points") {
  const Vector c{{1.0, -2.0, 0.5}};
  std::vector<Vector> pts;
  for (const auto& u : fibonacci_directions(50)) pts.push_back(c + 3.0 * u);
  const SphereFit fit = fit_sphere(pts);
  CHECK((fit.center - c).norm() < 1e-10);
  CHECK(fit.radius == doctest::Approx(3.0).epsilon(1e-12));
  std::vector<Vector> circ;
  for (const auto& u : circle_directions(7)) circ.push_back(Vector{{2.0, 1.0}} + 0.5 * u);
  const SphereFit f2 = fit_sphere(circ);
  CHECK((f2.center - Vector{{2.0, 1.0}}).norm() < 1e-12);
  CHECK(f2.radius == doctest::Approx(0.5));
}

TEST_CASE("scan verdicts") {
  const ConvexBody ball = make_ball(1.0, 2000);
  const double tol_ball = default_equilibrium_tolerance(ball);
  const ScanResult floats = equilibrium_scan(ball, 0.5 * ball.volume(), 100, tol_ball);
  CHECK(floats.verdict == ScanVerdict::FloatsAllDirections);
  CHECK(floats.equilibria.empty());
  CHECK(floats.max_residual <= tol_ball);
  CHECK(floats.records.size() == 100);

  const ConvexBody cube = make_unit_cube(3);
  const ScanResult no = equilibrium_scan(cube, 0.5, 300, kExactEquilibriumTol);
  CHECK(no.verdict == ScanVerdict::No);
  CHECK(no.max_residual > 0.05);
  CHECK_FALSE(no.equilibria.empty());
  for (const auto& e : no.equilibria) CHECK(e.residual <= kExactEquilibriumTol);
  bool found_face = false;
  for (const auto& e : no.equilibria)
    if (angle_between(e.xi, Vector{{0.0, 0.0, 1.0}}) < 1e-3) found_face = true;
  CHECK(found_face);
}

TEST_CASE("scan refinement follows a circle of equilibria") {
  const ConvexBody spheroid = make_ellipsoid(Vector{{2.0, 1.0, 1.0}}, 2000);
  const double tol = default_equilibrium_tolerance(spheroid);
  const ScanResult r = equilibrium_scan(spheroid, 0.5 * spheroid.volume(), 500, tol);
  CHECK(r.verdict == ScanVerdict::No);
  int on_circle = 0;
  for (const auto& e : r.equilibria) {
    CHECK(e.residual <= tol);
    const bool on_axis = std::abs(std::abs(e.xi[0]) - 1.0) < 1e-3;
    if (!on_axis) {
      CHECK(std::abs(e.xi[0]) < 1e-3);
      ++on_circle;
    }
  }
  CHECK(on_circle >= 8);
}

TEST_CASE("scan is independent of the job count") {
  const ConvexBody p = make_random_polytope(20, 3);
  ScanOptions one, three;
  three.jobs = 3;
  const ScanResult a = equilibrium_scan(p, 0.4 * p.volume(), 64, 1e-6, one);
  const ScanResult b = equilibrium_scan(p, 0.4 * p.volume(), 64, 1e-6, three);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].t == b.records[i].t);
    CHECK(a.records[i].residual == b.records[i].residual);
  }
  CHECK(a.equilibria.size() == b.equilibria.size());
}

TEST_CASE("planar square floats at its diagonals and faces") {
  const ConvexBody sq = make_unit_cube(2);
  const ScanResult r = equilibrium_scan(sq, 0.5, 360, kExactEquilibriumTol);
  CHECK(r.verdict == ScanVerdict::No);
  CHECK(r.equilibria.size() == 8);
}

}  // TEST_SUITE
