#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "buoyancy/diagnostics.hpp"
#include "buoyancy/directions.hpp"
#include "buoyancy/zoo.hpp"

using namespace buoyancy;

namespace {

// Area of the unit square on the side {n . p <= t}, by clipping its corners.
double square_cap(const Eigen::Vector2d& n, double t) {
  const Eigen::Vector2d sq[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<Eigen::Vector2d> poly;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector2d& a = sq[i];
    const Eigen::Vector2d& b = sq[(i + 1) % 4];
    const double fa = n.dot(a) - t, fb = n.dot(b) - t;
    if (fa <= 0.0) poly.push_back(a);
    if ((fa < 0.0) != (fb < 0.0) && fa != fb) poly.push_back(a + (b - a) * (fa / (fa - fb)));
  }
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    area += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(area);
}

// Smallest area cut from the unit square by a line through p.
double min_cap_through(const Eigen::Vector2d& p) {
  double best = 1.0;
  for (int k = 0; k < 3600; ++k) {
    const double a = 2.0 * oracle::pi() * k / 3600.0;
    const Eigen::Vector2d n{std::cos(a), std::sin(a)};
    best = std::min(best, square_cap(n, n.dot(p)));
  }
  return best;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("radial and support functions") {
  const ConvexBody cube = make_box(2.0, 2.0, 2.0);
  CHECK(radial_function(cube, Vector::Zero(3), Vector{{1.0, 0.0, 0.0}}) == doctest::Approx(1.0));
  CHECK(radial_function(cube, Vector::Zero(3), Vector::Ones(3).normalized()) ==
        doctest::Approx(std::sqrt(3.0)));
  CHECK(support_function(cube, Vector::Ones(3).normalized()) == doctest::Approx(std::sqrt(3.0)));
  const Section sec = section(cube, HalfSpace{Vector{{0.0, 0.0, 1.0}}, 0.0});
  CHECK(section_radial(sec, Vector{{1.0, 0.0}}) == doctest::Approx(1.0));
  CHECK(section_radial(sec, Vector(Vector{{1.0, 1.0}}.normalized())) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("moment test separates the ball from the ellipsoid") {
  const auto dirs = fibonacci_directions(60);
  const ConvexBody ball = make_ball(1.0, 2000);
  const MomentTestResult b = principal_moment_test(ball, 0.5 * ball.volume(), dirs,
                                                   default_test_tolerance(ball));
  CHECK(b.pass);
  CHECK(b.c == doctest::Approx(oracle::pi() / 4.0).epsilon(0.01));
  CHECK(b.target == doctest::Approx(4.0 * b.c));
  CHECK(b.implied_radius == doctest::Approx(b.c / (0.5 * ball.volume())));
  CHECK(b.records.size() == dirs.size());

  const ConvexBody ell = make_ellipsoid(Vector{{1.5, 1.0, 0.8}}, 2000);
  const MomentTestResult e = principal_moment_test(ell, 0.5 * ell.volume(), dirs,
                                                   default_test_tolerance(ell));
  CHECK_FALSE(e.pass);
  CHECK(e.max_diagonal_deviation > 0.2);
}

TEST_CASE("cube passes on its axes only") {
  const ConvexBody cube = make_unit_cube(3);
  const std::vector<Vector> axes{Vector{{1.0, 0.0, 0.0}}, Vector{{0.0, 1.0, 0.0}},
                                 Vector{{0.0, 0.0, 1.0}}};
  const MomentTestResult a = principal_moment_test(cube, 0.5, axes, 1e-6);
  CHECK(a.pass);
  CHECK(a.c == doctest::Approx(1.0 / 12.0));
  std::vector<Vector> tilted = axes;
  tilted.push_back(Vector{{1.0, 0.4, 0.2}}.normalized());
  CHECK_FALSE(principal_moment_test(cube, 0.5, tilted, 1e-6).pass);
}

TEST_CASE("equichordal sums") {
  const ConvexBody ball = make_ball(1.0, 2000);
  const auto dirs = fibonacci_directions(30);
  const EquichordalResult b = equichordal_test(ball, 0.5 * ball.volume(), dirs, 16,
                                               default_equichordal_tolerance(ball));
  CHECK(b.pass);
  CHECK(b.constant == doctest::Approx(2.0).epsilon(0.01));

  const ConvexBody ellipse = make_ellipsoid(Vector{{2.0, 1.0}}, 4096);
  const std::vector<Vector> two{Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}};
  const EquichordalResult e = equichordal_test(ellipse, 0.5 * ellipse.volume(), two, 16,
                                               default_equichordal_tolerance(ellipse));
  CHECK_FALSE(e.pass);
  CHECK(e.records[0].min_sum == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(e.records[1].max_sum == doctest::Approx(16.0).epsilon(1e-4));
  CHECK_THROWS_AS(equichordal_test(ball, 0.5 * ball.volume(), dirs, 4, 0.01), Error);
}

TEST_CASE("isotropy of functions on equators") {
  const auto dirs = fibonacci_directions(40);
  const IsotropyResult one = isotropy_on_equators_test(
      [](const Vector&) { return 1.0; }, 3, dirs, 1e-10);
  CHECK(one.pass);
  CHECK(one.c == doctest::Approx(oracle::pi()).epsilon(1e-12));
  CHECK(one.max_first_moment < 1e-12);
  const IsotropyResult three = isotropy_on_equators_test(
      [](const Vector&) { return 3.0; }, 3, dirs, 1e-10);
  CHECK(three.c == doctest::Approx(3.0 * oracle::pi()).epsilon(1e-12));

  const IsotropyResult aniso = isotropy_on_equators_test(
      [](const Vector& u) { return 1.0 + 0.5 * u[0] * u[0]; }, 3, dirs, 1e-6);
  CHECK_FALSE(aniso.pass);
  const IsotropyResult odd = isotropy_on_equators_test(
      [](const Vector& u) { return 1.0 + 0.3 * u[2]; }, 3, dirs, 1e-6);
  CHECK_FALSE(odd.pass);
  CHECK(odd.max_first_moment > 0.1);
}

TEST_CASE("isotropy of bodies") {
  const auto dirs = fibonacci_directions(40);
  const ConvexBody ball = make_ball(1.0, 2000);
  const IsotropyResult b = isotropy_on_equators_test(ball, dirs, default_test_tolerance(ball));
  CHECK(b.pass);
  CHECK(b.c == doctest::Approx(oracle::pi()).epsilon(0.01));
  try {
    isotropy_on_equators_test(make_random_polytope(20, 1), dirs, 1e-3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RequiresCentralSymmetry);
  }
  CHECK_THROWS_AS(isotropy_on_equators_test(make_unit_cube(3), dirs, 1e-3), Error);
}

TEST_CASE("floating body of the square") {
  const ConvexBody sq = make_unit_cube(2);
  const double delta = 0.02;
  const FloatingBody fb = floating_body(sq, delta, circle_directions(720));
  REQUIRE(fb.body);
  const double exact = 4.0 * (0.5 * (0.5 - delta) - 0.5 * delta * std::log(0.5 / delta));
  CHECK(fb.body->volume() == doctest::Approx(exact).epsilon(1e-3));
  CHECK(fb.body->volume() >= exact);
  CHECK(fb.dupin_gap < 0.05);

  SplitMix64 rng(3);
  for (int i = 0; i < 150; ++i) {
    const Eigen::Vector2d p{rng.uniform() * 0.5, rng.uniform() * 0.5};
    const double m = min_cap_through(p);
    const bool in = oracle::inside(*fb.body, Vector(p));
    if (m > 1.05 * delta) CHECK(in);
    if (m < 0.95 * delta) CHECK_FALSE(in);
  }
}

TEST_CASE("floating bodies shrink with delta") {
  const ConvexBody p = make_random_polytope(30, 5);
  const auto dirs = fibonacci_directions(200);
  double prev = p.volume();
  for (double frac : {0.01, 0.05, 0.1, 0.2}) {
    const FloatingBody fb = floating_body(p, frac * p.volume(), dirs);
    REQUIRE(fb.body);
    CHECK(fb.body->volume() < prev);
    for (const auto& v : fb.body->vertices()) CHECK(oracle::inside(p, v));
    prev = fb.body->volume();
  }
  const FloatingBody empty = floating_body(p, 0.49 * p.volume(), dirs);
  CHECK_FALSE(empty.body);
}

TEST_CASE("floating body keeps the symmetry") {
  const ConvexBody box = make_box(2.0, 1.0, 1.0);
  const FloatingBody fb = floating_body(box, 0.05 * box.volume(),
                                        symmetric_direction_grid(3, 150));
  REQUIRE(fb.body);
  CHECK(fb.body->centroid().norm() < 1e-9);
  const ConvexBody mirrored = fb.body->transformed(-Matrix::Identity(3, 3), Vector::Zero(3));
  CHECK(hausdorff_distance(*fb.body, mirrored) < 1e-9);
}

TEST_CASE("Hausdorff distance") {
  const ConvexBody cube = make_unit_cube(3);
  const Vector v{{0.3, 0.0, 0.0}};
  const ConvexBody shifted = cube.transformed(Matrix::Identity(3, 3), v);
  CHECK(hausdorff_distance(cube, shifted) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(hausdorff_distance(cube, cube) == 0.0);

  const ConvexBody small = make_ball(1.0, 2000);
  const ConvexBody large = make_ball(1.5, 2000);
  CHECK(hausdorff_distance(small, large) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(hausdorff_distance_to_ball(small, Vector::Zero(3), 1.0) < 5e-3);

  const ConvexBody a = make_random_polytope(15, 1);
  const ConvexBody b = make_random_polytope(15, 2);
  const ConvexBody c = make_random_polytope(15, 3);
  const double ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  CHECK(ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
  CHECK_THROWS_AS(hausdorff_distance(a, make_unit_cube(2)), Error);
}

TEST_CASE("ball limit") {
  const ConvexBody ell = make_ellipsoid(Vector{{1.5, 1.0, 0.8}}, 1000);
  BallLimitOptions opt;
  opt.n_dirs = 60;
  const double v = ell.volume();
  const BallLimitResult e = ball_limit_test(ell, {0.2 * v, 0.1 * v}, opt);
  CHECK_FALSE(e.floats);
  CHECK_FALSE(e.ball_certified);
  CHECK(e.steps.size() == 2);

  ZindlerParams zp;
  zp.cos_coeffs = {0.1};
  const ConvexBody z = make_zindler(zp, 4096);
  const BallLimitResult single = ball_limit_test(z, {0.5 * z.volume()}, opt);
  CHECK(single.floats);
  CHECK_FALSE(single.ball_certified);
}

}  // TEST_SUITE
