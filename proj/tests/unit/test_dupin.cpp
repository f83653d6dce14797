#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles.hpp"

#include "buoyancy/directions.hpp"
#include "buoyancy/dupin.hpp"
#include "buoyancy/flotation.hpp"
#include "buoyancy/kernel.hpp"
#include "buoyancy/zoo.hpp"

using namespace buoyancy;

TEST_SUITE("dupin") {

TEST_CASE("cube centers stay on one side of the tangent plane") {
  const ConvexBody cube = make_unit_cube(3);
  const Dupin1Report r = check_dupin1(cube, 0.5, Vector{{0.0, 0.0, 1.0}}, {0.1, 0.05, 0.01});
  CHECK(r.pass);
  CHECK(r.probes.size() == 12);
  CHECK(r.worst >= -r.tolerance);
  for (double m : r.margins) CHECK(m > 0.0);
}

TEST_CASE("zero probe angle gives a zero margin") {
  const ConvexBody p = make_random_polytope(20, 6);
  const Dupin1Report r = check_dupin1(p, 0.3 * p.volume(), Vector{{0.0, 1.0, 0.0}}, std::vector<double>{0.0});
  for (double m : r.margins) CHECK(m == 0.0);
  CHECK(r.pass);
  CHECK_THROWS_AS(check_dupin1(p, 0.3 * p.volume(), Vector{{0.0, 1.0, 0.0}}, std::vector<double>{0.3}), Error);
}

TEST_CASE("ball margins follow the sphere of centers") {
  const ConvexBody ball = make_ball(1.0, 4000);
  const double delta = 0.5 * ball.volume();
  const Vector xi{{0.0, 0.0, 1.0}};
  for (double angle : {0.05, 0.1, 0.2}) {
    const Dupin1Report r = check_dupin1(ball, delta, xi, std::vector<double>{angle});
    const double expected = 0.375 * (1.0 - std::cos(angle));
    for (double m : r.margins) CHECK(m == doctest::Approx(expected).epsilon(0.03));
    CHECK(r.pass);
  }
}

TEST_CASE("explicit probes") {
  const ConvexBody cube = make_unit_cube(3);
  const Vector xi{{0.0, 0.0, 1.0}};
  const std::vector<Vector> probes{Vector{{0.1, 0.0, 1.0}}.normalized(),
                                   Vector{{0.0, -0.2, 1.0}}.normalized()};
  const Dupin1Report r = check_dupin1(cube, 0.5, xi, probes);
  CHECK(r.margins.size() == 2);
  CHECK(r.pass);
  CHECK_THROWS_AS(check_dupin1(cube, 0.5, xi, std::vector<Vector>{Vector{{2.0, 0.0, 0.0}}}),
                  Error);
}

TEST_CASE("turning about the section centroid keeps the volume") {
  const ConvexBody cube = make_unit_cube(3);
  const double h = 1e-3, s = 0.2;
  const Dupin2Report r = check_dupin2(cube, 0.5, Vector{{0.0, 0.0, 1.0}},
                                      Vector{{1.0, 0.0, 0.0}}, h, s);
  CHECK(std::abs(r.centroid_change) < 1e-12);
  CHECK(r.offset_change == doctest::Approx(std::tan(h) * s).epsilon(1e-9));
  CHECK(r.predicted_offset_change == doctest::Approx(h * s));
  REQUIRE(r.offset_order);
  CHECK(*r.offset_order == doctest::Approx(1.0).epsilon(1e-3));
  CHECK((r.section_centroid - Vector{{0.5, 0.5, 0.5}}).norm() < 1e-12);

  const Dupin2Report zero = check_dupin2(cube, 0.5, Vector{{0.0, 0.0, 1.0}},
                                         Vector{{1.0, 0.0, 0.0}}, 0.0, s);
  CHECK(zero.centroid_change == 0.0);
  CHECK(zero.offset_change == 0.0);
  CHECK_FALSE(zero.offset_order);
}

TEST_CASE("centroid change decays quadratically on an asymmetric body") {
  const ConvexBody p = make_random_polytope(30, 12);
  SplitMix64 rng(8);
  for (int i = 0; i < 5; ++i) {
    const Vector xi = oracle::random_unit(3, rng);
    const Vector eta = orthonormal_complement(xi)[0];
    const Dupin2Report r = check_dupin2(p, 0.4 * p.volume(), xi, eta);
    if (r.centroid_order) CHECK(*r.centroid_order >= 1.9);
    REQUIRE(r.offset_order);
    CHECK(*r.offset_order == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(r.offset_change) > 10.0 * std::abs(r.centroid_change));
    CHECK(r.offset_change == doctest::Approx(r.predicted_offset_change).epsilon(0.02));
  }
}

TEST_CASE("box metacentric radii") {
  const ConvexBody box = make_box(2.0, 1.0, 1.0);
  const double delta = 0.5 * box.volume();
  const Vector xi{{0.0, 0.0, 1.0}};
  const MetacenterEstimate ex = metacentric_radius_fd(box, delta, xi, Vector{{1.0, 0.0, 0.0}});
  CHECK(ex.R_pred == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(ex.R_fd == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK(ex.rel_gap < 1e-4);
  const MetacenterEstimate ey = metacentric_radius_fd(box, delta, xi, Vector{{0.0, 1.0, 0.0}});
  CHECK(ey.R_pred == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(ey.R_fd == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
  CHECK(std::abs(ey.zeta.dot(Vector{{0.0, 1.0, 0.0}})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(metacentric_radius_fd(box, delta, xi, Vector{{0.0, 1.0, 0.0}}, 0.0), Error);
}

TEST_CASE("predicted radius is frame independent") {
  const ConvexBody p = make_random_polytope(30, 21);
  const Matrix q = oracle::random_rotation(3, 4);
  const ConvexBody moved = p.transformed(q, Vector{{1.0, 2.0, 3.0}});
  const Vector xi = Vector{{0.1, 0.7, -0.3}}.normalized();
  const Vector zp = orthonormal_complement(xi)[1];
  const double delta = 0.5 * p.volume();
  const MetacenterEstimate a = metacentric_radius_fd(p, delta, xi, zp);
  const MetacenterEstimate b = metacentric_radius_fd(moved, delta, q * xi, q * zp);
  CHECK(b.R_pred == doctest::Approx(a.R_pred).epsilon(1e-9));
  CHECK(b.R_fd == doctest::Approx(a.R_fd).epsilon(1e-5));
  CHECK(a.rel_gap < 1e-3);
}

TEST_CASE("predicted radius ranges over the eigenvalues") {
  const ConvexBody p = make_random_polytope(40, 2);
  const Vector xi = Vector{{0.3, 0.3, 0.9}}.normalized();
  const double delta = 0.35 * p.volume();
  const Waterline w = find_waterline(p, xi, delta, kFiniteDifferenceWaterlineTol);
  const Section sec = section(p, HalfSpace{xi, w.t});
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sec.moments);
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 360; ++k) {
    const double a = oracle::pi() * k / 360.0;
    const Vector zp = std::cos(a) * sec.frame[0] + std::sin(a) * sec.frame[1];
    const MetacenterEstimate e = metacentric_radius_fd(p, delta, xi, zp);
    lo = std::min(lo, e.R_pred);
    hi = std::max(hi, e.R_pred);
  }
  CHECK(lo == doctest::Approx(eig.eigenvalues()[0] / delta).epsilon(1e-4));
  CHECK(hi == doctest::Approx(eig.eigenvalues()[1] / delta).epsilon(1e-4));
}

TEST_CASE("prism radius matches its planar base") {
  const ConvexBody base = make_random_polytope(9, 3, 2);
  const ConvexBody prism = make_prism(base, 1.5);
  const Vector xi2 = Vector{{0.6, 0.8}};
  const Vector xi3{{0.6, 0.8, 0.0}};
  const double frac = 0.45;
  const DavidovReport d2 = davidov_2d_check(base, frac * base.volume(), xi2);
  const Vector zp{{-0.8, 0.6, 0.0}};
  const MetacenterEstimate e3 = metacentric_radius_fd(prism, frac * prism.volume(), xi3, zp);
  CHECK(e3.R_pred == doctest::Approx(d2.R_pred).epsilon(1e-8));
  CHECK(e3.R_fd == doctest::Approx(d2.R_fd).epsilon(1e-5));
}

TEST_CASE("planar metacentric radius") {
  const ConvexBody sq = make_unit_cube(2);
  const DavidovReport r = davidov_2d_check(sq, 0.5, Vector{{0.0, 1.0}});
  CHECK(r.chord_length == doctest::Approx(1.0));
  CHECK(r.R_pred == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(r.R_fd == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
  CHECK(r.center_distance == doctest::Approx(0.25).epsilon(1e-9));

  const double lambda = 3.0;
  const ConvexBody big = sq.transformed(Matrix::Identity(2, 2), Vector::Zero(2), lambda);
  const DavidovReport rb = davidov_2d_check(big, 0.5 * lambda * lambda, Vector{{0.0, 1.0}});
  CHECK(rb.R_pred == doctest::Approx(lambda / 6.0).epsilon(1e-12));
  CHECK(rb.R_fd == doctest::Approx(lambda * r.R_fd).epsilon(1e-6));

  const ConvexBody disk = make_ball(1.0, 4096, 2);
  const DavidovReport rd = davidov_2d_check(disk, 0.5 * disk.volume(), Vector{{0.0, 1.0}});
  CHECK(rd.R_pred == doctest::Approx(4.0 / (3.0 * oracle::pi())).epsilon(1e-4));
  CHECK(rd.rel_gap < 1e-3);

  CHECK_THROWS_AS(davidov_2d_check(make_unit_cube(3), 0.5, Vector{{0.0, 0.0, 1.0}}), Error);
}

}  // TEST_SUITE
