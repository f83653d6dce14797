#include "buoyancy/dupin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "buoyancy/directions.hpp"
#include "buoyancy/flotation.hpp"
#include "buoyancy/kernel.hpp"

namespace buoyancy {

namespace {

constexpr double kSupportRelTol = 1e-8;
constexpr double kMaxFdStep = 0.2;

void require_unit_direction(const ConvexBody& body, const Vector& v, const char* what) {
  if (v.size() != body.dimension())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has wrong dimension");
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a unit vector");
}

void require_tangent(const Vector& xi, const Vector& eta, const char* what) {
  if (std::abs(xi.dot(eta)) > 1e-9)
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be orthogonal to xi");
}

std::optional<double> decay_order(double coarse, double fine, double floor) {
  if (std::abs(coarse) <= floor || std::abs(fine) <= floor) return std::nullopt;
  return std::log10(std::abs(coarse) / std::abs(fine));
}

// Circumradius of three planar points; nullopt when they are collinear.
std::optional<double> circumradius(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                   const Eigen::Vector2d& c) {
  const Eigen::Vector2d u = b - a;
  const Eigen::Vector2d v = c - a;
  const double cross = u.x() * v.y() - u.y() * v.x();
  const double la = (b - c).norm();
  const double lb = v.norm();
  const double lc = u.norm();
  const double scale = std::max({la, lb, lc});
  if (!(std::abs(cross) > 64.0 * std::numeric_limits<double>::epsilon() * scale * scale))
    return std::nullopt;
  return la * lb * lc / (2.0 * std::abs(cross));
}

}  // namespace

Dupin1Report check_dupin1(const ConvexBody& body, double delta, const Vector& xi,
                          const std::vector<double>& probe_angles,
                          std::optional<double> tolerance) {
  require_unit_direction(body, xi, "xi");
  std::vector<Vector> probes;
  const auto frame = orthonormal_complement(xi);
  for (double angle : probe_angles) {
    if (!(std::abs(angle) <= kMaxFdStep))
      throw Error(ErrorCode::InvalidInput, "probe angles must lie in [-0.2, 0.2]");
    for (const auto& e : frame) {
      probes.push_back(rotate_toward(xi, e, angle));
      probes.push_back(rotate_toward(xi, e, -angle));
    }
  }
  return check_dupin1(body, delta, xi, probes, tolerance);
}

Dupin1Report check_dupin1(const ConvexBody& body, double delta, const Vector& xi,
                          const std::vector<Vector>& probes,
                          std::optional<double> tolerance) {
  require_unit_direction(body, xi, "xi");
  Dupin1Report rep;
  rep.xi = xi;
  rep.tolerance = tolerance.value_or(kSupportRelTol * body.extent());
  rep.center = buoyancy_center(body, xi, delta).center;
  rep.probes = probes;
  rep.worst = std::numeric_limits<double>::infinity();
  for (const auto& eta : probes) {
    require_unit_direction(body, eta, "probe direction");
    const Vector c = buoyancy_center(body, eta, delta).center;
    const double m = (c - rep.center).dot(xi);
    rep.margins.push_back(m);
    rep.worst = std::min(rep.worst, m);
  }
  if (probes.empty()) rep.worst = 0.0;
  rep.pass = rep.worst >= -rep.tolerance;
  return rep;
}

Dupin2Report check_dupin2(const ConvexBody& body, double delta, const Vector& xi,
                          const Vector& eta, double h, double offset) {
  require_unit_direction(body, xi, "xi");
  require_unit_direction(body, eta, "eta");
  require_tangent(xi, eta, "eta");
  if (!(h >= 0.0 && h <= kMaxFdStep))
    throw Error(ErrorCode::InvalidInput, "h must lie in [0, 0.2]");
  if (offset == 0.0) offset = 0.1 * body.extent();

  const Waterline w = find_waterline(body, xi, delta, kFiniteDifferenceWaterlineTol);
  const Section sec = section(body, HalfSpace{xi, w.t});
  const double base = cap_volume(body, xi, w.t);
  const double along = eta.dot(sec.centroid);

  // The plane through the axis point a with normal cos(h) xi + sin(h) eta.
  auto change = [&](double angle, double s) {
    const Vector n = std::cos(angle) * xi + std::sin(angle) * eta;
    const double t = std::cos(angle) * w.t + std::sin(angle) * (along + s);
    return cap_volume(body, n, t) - base;
  };

  Dupin2Report rep;
  rep.xi = xi;
  rep.eta = eta;
  rep.section_centroid = sec.centroid;
  rep.section_area = sec.area;
  rep.h = h;
  rep.offset = offset;
  rep.centroid_change = change(h, 0.0);
  rep.centroid_change_tenth = change(0.1 * h, 0.0);
  rep.offset_change = change(h, offset);
  rep.offset_change_tenth = change(0.1 * h, offset);
  const double floor = 1e-13 * body.volume();
  rep.centroid_order = decay_order(rep.centroid_change, rep.centroid_change_tenth, floor);
  rep.offset_order = decay_order(rep.offset_change, rep.offset_change_tenth, floor);
  rep.predicted_offset_change = h * offset * sec.area;
  return rep;
}

MetacenterEstimate metacentric_radius_fd(const ConvexBody& body, double delta,
                                         const Vector& xi, const Vector& zeta_prime,
                                         double h) {
  require_unit_direction(body, xi, "xi");
  require_unit_direction(body, zeta_prime, "zeta'");
  require_tangent(xi, zeta_prime, "zeta'");
  if (!(h > 0.0 && h <= kMaxFdStep))
    throw Error(ErrorCode::InvalidInput, "h must lie in (0, 0.2]");

  const double tol = kFiniteDifferenceWaterlineTol;
  const Waterline w = find_waterline(body, xi, delta, tol);
  const Section sec = section(body, HalfSpace{xi, w.t});

  MetacenterEstimate est;
  est.xi = xi;
  est.zeta_prime = zeta_prime;
  est.h = h;
  const double moment = moment_about_axis(sec, zeta_prime);
  if (!(moment > 1e-14 * std::pow(body.extent(), body.dimension() + 1)))
    throw Error(ErrorCode::CurvatureUndefined, "curvature undefined at this resolution");
  est.R_pred = moment / delta;

  // Motion of C is along J zeta', mapped back to ambient coordinates.
  Vector motion = Vector::Zero(body.dimension());
  for (std::size_t j = 0; j < sec.frame.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < sec.frame.size(); ++k)
      s += sec.moments(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *
           sec.frame[k].dot(zeta_prime);
    motion += s * sec.frame[j];
  }
  est.zeta = motion.normalized();

  const Vector c0 = cap_moments(body, xi, w.t).centroid;
  auto radius = [&](double step) {
    const Vector cp = buoyancy_center(body, rotate_toward(xi, zeta_prime, step), delta, tol).center;
    const Vector cm = buoyancy_center(body, rotate_toward(xi, zeta_prime, -step), delta, tol).center;
    auto project = [&](const Vector& c) {
      const Vector r = c - c0;
      return Eigen::Vector2d(r.dot(xi), r.dot(zeta_prime));
    };
    const auto r = circumradius(project(cm), Eigen::Vector2d::Zero(), project(cp));
    if (!r)
      throw Error(ErrorCode::CurvatureUndefined, "curvature undefined at this resolution");
    return *r;
  };
  est.R_fd = radius(h);
  est.R_fd_2h = 2.0 * h <= kMaxFdStep ? radius(2.0 * h) : est.R_fd;
  est.rel_gap = std::abs(est.R_fd - est.R_pred) / est.R_pred;
  return est;
}

DavidovReport davidov_2d_check(const ConvexBody& body, double delta, const Vector& xi,
                               double h) {
  if (body.dimension() != 2)
    throw Error(ErrorCode::UnsupportedDimension, "davidov check needs a planar body");
  require_unit_direction(body, xi, "xi");
  const Waterline w = find_waterline(body, xi, delta, kFiniteDifferenceWaterlineTol);
  const Section sec = section(body, HalfSpace{xi, w.t});

  DavidovReport rep;
  rep.xi = xi;
  rep.delta = delta;
  rep.chord_length = sec.area;
  rep.R_pred = std::pow(sec.area, 3) / (12.0 * delta);
  const Vector perp{{-xi[1], xi[0]}};
  rep.R_fd = metacentric_radius_fd(body, delta, xi, perp, h).R_fd;
  rep.rel_gap = std::abs(rep.R_fd - rep.R_pred) / rep.R_pred;
  rep.center_distance =
      (body.centroid() - cap_moments(body, xi, w.t).centroid).norm();
  return rep;
}

}  // namespace buoyancy
