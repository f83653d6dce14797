#include "buoyancy/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "buoyancy/directions.hpp"
#include "detail/parallel.hpp"

namespace buoyancy {

namespace {

// Moment and isotropy deviations of meshed smooth bodies: scale / facets.
constexpr double kMeshMomentScale = 8.0;
// Radial errors enter the equichordal sums with the power d + 1.
constexpr double kMeshRadialScale = 12.0;
constexpr std::size_t kMinChords = 8;
constexpr std::size_t kMinEquatorNodes = 64;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

void require_tolerance(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
}

void require_directions(const std::vector<Vector>& dirs, int d) {
  if (dirs.empty()) throw Error(ErrorCode::InvalidInput, "no directions given");
  for (const auto& xi : dirs) {
    if (xi.size() != d)
      throw Error(ErrorCode::DimensionMismatch, "direction has wrong dimension");
  }
}

Vector frame_coords(const Section& sec, const Vector& p) {
  Vector u(static_cast<Eigen::Index>(sec.frame.size()));
  for (std::size_t j = 0; j < sec.frame.size(); ++j)
    u[static_cast<Eigen::Index>(j)] = sec.frame[j].dot(p);
  return u;
}

Section waterline_section(const ConvexBody& body, const Vector& xi, double delta) {
  const Waterline w = find_waterline(body, xi, delta);
  return section(body, HalfSpace{xi, w.t});
}

void check_central_symmetry(const ConvexBody& body) {
  const double eps = body.geom_tolerance();
  if (body.centroid().norm() > eps)
    throw Error(ErrorCode::RequiresCentralSymmetry,
                "requires central symmetry: centroid is not at the origin");
  for (const auto& f : body.facets()) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& v : body.vertices()) lowest = std::min(lowest, f.normal.dot(v));
    if (-lowest > f.offset + eps)
      throw Error(ErrorCode::RequiresCentralSymmetry,
                  "requires central symmetry: body differs from its reflection");
  }
}

std::vector<Vector> hausdorff_directions(const ConvexBody& a, std::size_t n_dirs) {
  std::vector<Vector> dirs = direction_grid(a.dimension(), std::max<std::size_t>(n_dirs, 2));
  for (const auto& f : a.facets()) dirs.push_back(f.normal);
  return dirs;
}

}  // namespace

double section_radial(const Section& sec, const Vector& w) {
  const Vector c = frame_coords(sec, sec.centroid);
  if (w.size() != c.size())
    throw Error(ErrorCode::DimensionMismatch, "chord direction has wrong dimension");
  if (c.size() == 1) {
    const double lo = sec.vertices[0][0] - c[0];
    const double hi = sec.vertices[1][0] - c[0];
    return w[0] > 0.0 ? hi : -lo;
  }
  double rho = std::numeric_limits<double>::infinity();
  const std::size_t n = sec.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& a = sec.vertices[i];
    const Vector& b = sec.vertices[(i + 1) % n];
    const Vector normal{{b[1] - a[1], a[0] - b[0]}};
    const double along = normal.dot(w);
    if (along > 0.0) rho = std::min(rho, normal.dot(a - c) / along);
  }
  if (!std::isfinite(rho) || rho < 0.0)
    throw Error(ErrorCode::Internal, "section centroid lies outside the section");
  return rho;
}

double radial_function(const ConvexBody& body, const Vector& origin, const Vector& w) {
  if (w.size() != body.dimension() || origin.size() != body.dimension())
    throw Error(ErrorCode::DimensionMismatch, "radial function arguments have wrong dimension");
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& f : body.facets()) {
    const double along = f.normal.dot(w);
    if (along > 0.0) rho = std::min(rho, (f.offset - f.normal.dot(origin)) / along);
  }
  if (!std::isfinite(rho) || rho < 0.0)
    throw Error(ErrorCode::InvalidInput, "radial function needs an interior origin");
  return rho;
}

double support_function(const ConvexBody& body, const Vector& u) {
  return body.support(u);
}

double default_test_tolerance(const ConvexBody& body) {
  if (!body.is_mesh()) return kExactEquilibriumTol;
  return std::max(kExactEquilibriumTol,
                  kMeshMomentScale / static_cast<double>(body.mesh_facets()));
}

double default_equichordal_tolerance(const ConvexBody& body) {
  if (!body.is_mesh()) return kExactEquilibriumTol;
  return std::max(kExactEquilibriumTol, kMeshRadialScale * (body.dimension() + 1) /
                                            static_cast<double>(body.mesh_facets()));
}

MomentTestResult principal_moment_test(const ConvexBody& body, double delta,
                                       const std::vector<Vector>& directions,
                                       double tol, std::size_t jobs) {
  require_tolerance(tol);
  require_directions(directions, body.dimension());
  MomentTestResult res;
  res.tolerance = tol;
  res.records.resize(directions.size());
  detail::parallel_for(directions.size(), jobs, [&](std::size_t i) {
    const Section sec = waterline_section(body, directions[i], delta);
    MomentRecord& r = res.records[i];
    r.xi = directions[i];
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sec.moments, Eigen::EigenvaluesOnly);
    r.eigenvalues = eig.eigenvalues();
    r.trace = sec.moments.trace();
    for (Eigen::Index j = 0; j < sec.moments.rows(); ++j)
      for (Eigen::Index k = 0; k < sec.moments.cols(); ++k)
        if (j != k) r.off_diagonal = std::max(r.off_diagonal, std::abs(sec.moments(j, k)));
  });

  const double dims = static_cast<double>(body.dimension() - 1);
  std::vector<double> constants;
  for (const auto& r : res.records) constants.push_back(r.trace / dims);
  res.c = median(constants);
  res.target = (body.dimension() + 1) * res.c;
  res.implied_radius = res.c / delta;
  for (const auto& r : res.records) {
    for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k)
      res.max_diagonal_deviation =
          std::max(res.max_diagonal_deviation, std::abs(r.eigenvalues[k] - res.c) / res.c);
    res.max_off_diagonal = std::max(res.max_off_diagonal, r.off_diagonal);
  }
  res.pass = res.max_diagonal_deviation <= tol && res.max_off_diagonal <= tol * res.c;
  return res;
}

EquichordalResult equichordal_test(const ConvexBody& body, double delta,
                                   const std::vector<Vector>& directions,
                                   std::size_t n_chords, double tol, std::size_t jobs) {
  require_tolerance(tol);
  require_directions(directions, body.dimension());
  if (n_chords < kMinChords)
    throw Error(ErrorCode::InvalidInput, "equichordal test needs at least 8 chords");
  const int d = body.dimension();
  const double power = d + 1;

  EquichordalResult res;
  res.tolerance = tol;
  res.records.resize(directions.size());
  std::vector<std::vector<double>> sums(directions.size());
  detail::parallel_for(directions.size(), jobs, [&](std::size_t i) {
    const Section sec = waterline_section(body, directions[i], delta);
    std::vector<Vector> chords;
    if (d == 2) {
      chords.push_back(Vector::Ones(1));
    } else {
      for (std::size_t k = 0; k < n_chords; ++k) {
        const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_chords);
        chords.push_back(Vector{{std::cos(a), std::sin(a)}});
      }
    }
    for (const auto& w : chords)
      sums[i].push_back(std::pow(section_radial(sec, w), power) +
                        std::pow(section_radial(sec, -w), power));
    res.records[i] = {directions[i], *std::min_element(sums[i].begin(), sums[i].end()),
                      *std::max_element(sums[i].begin(), sums[i].end())};
  });

  std::vector<double> all;
  for (const auto& s : sums) all.insert(all.end(), s.begin(), s.end());
  res.constant = median(all);
  for (const auto& r : res.records) {
    res.max_deviation = std::max({res.max_deviation,
                                  std::abs(r.min_sum - res.constant) / res.constant,
                                  std::abs(r.max_sum - res.constant) / res.constant});
  }
  res.pass = res.max_deviation <= tol;
  return res;
}

IsotropyResult isotropy_on_equators_test(const std::function<double(const Vector&)>& f,
                                         int dimension,
                                         const std::vector<Vector>& directions,
                                         double tol, std::size_t n_nodes) {
  require_tolerance(tol);
  if (dimension != 2 && dimension != 3)
    throw Error(ErrorCode::UnsupportedDimension, "isotropy test supports d = 2, 3");
  require_directions(directions, dimension);
  if (dimension == 3 && n_nodes < kMinEquatorNodes)
    throw Error(ErrorCode::InvalidInput, "equator quadrature needs at least 64 nodes");

  IsotropyResult res;
  res.tolerance = tol;
  for (const auto& xi : directions) {
    const auto frame = orthonormal_complement(xi);
    const auto k = static_cast<Eigen::Index>(frame.size());
    IsotropyRecord r{xi, Matrix::Zero(k, k), Vector::Zero(k)};
    if (dimension == 2) {
      const double plus = f(frame[0]);
      const double minus = f(-frame[0]);
      r.second_moments(0, 0) = plus + minus;
      r.first_moments[0] = plus - minus;
    } else {
      const double weight = 2.0 * std::numbers::pi / static_cast<double>(n_nodes);
      for (std::size_t m = 0; m < n_nodes; ++m) {
        const double a = weight * static_cast<double>(m);
        const Vector w2{{std::cos(a), std::sin(a)}};
        const double value = f(w2[0] * frame[0] + w2[1] * frame[1]);
        r.second_moments += weight * value * w2 * w2.transpose();
        r.first_moments += weight * value * w2;
      }
    }
    res.records.push_back(std::move(r));
  }

  std::vector<double> constants;
  for (const auto& r : res.records)
    constants.push_back(r.second_moments.trace() / static_cast<double>(r.second_moments.rows()));
  res.c = median(constants);
  const double scale = std::abs(res.c);
  for (const auto& r : res.records) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(r.second_moments, Eigen::EigenvaluesOnly);
    for (Eigen::Index j = 0; j < eig.eigenvalues().size(); ++j)
      res.max_diagonal_deviation =
          std::max(res.max_diagonal_deviation, std::abs(eig.eigenvalues()[j] - res.c) / scale);
    for (Eigen::Index j = 0; j < r.second_moments.rows(); ++j)
      for (Eigen::Index l = 0; l < r.second_moments.cols(); ++l)
        if (j != l)
          res.max_off_diagonal = std::max(res.max_off_diagonal, std::abs(r.second_moments(j, l)));
    res.max_first_moment = std::max(res.max_first_moment, r.first_moments.cwiseAbs().maxCoeff());
  }
  res.pass = scale > 0.0 && res.max_diagonal_deviation <= tol &&
             res.max_off_diagonal <= tol * scale && res.max_first_moment <= tol * scale;
  return res;
}

IsotropyResult isotropy_on_equators_test(const ConvexBody& body,
                                         const std::vector<Vector>& directions,
                                         double tol, std::size_t n_nodes) {
  check_central_symmetry(body);
  const Vector origin = Vector::Zero(body.dimension());
  const double power = body.dimension() + 1;
  return isotropy_on_equators_test(
      [&](const Vector& w) { return std::pow(radial_function(body, origin, w), power); },
      body.dimension(), directions, tol, n_nodes);
}

FloatingBody floating_body(const ConvexBody& body, double delta,
                           const std::vector<Vector>& directions, std::size_t jobs) {
  require_directions(directions, body.dimension());
  FloatingBody fb;
  fb.delta = delta;
  fb.directions = directions;
  fb.halfspaces.resize(directions.size());
  detail::parallel_for(directions.size(), jobs, [&](std::size_t i) {
    const Waterline w = find_waterline(body, directions[i], delta);
    fb.halfspaces[i] = HalfSpace{-directions[i], -w.t};
  });

  std::optional<ConvexBody> current = body;
  for (const auto& hs : fb.halfspaces) {
    current = clip(*current, hs);
    if (!current) break;
  }
  fb.body = current ? std::optional<ConvexBody>(current->with_mesh_tag(0)) : std::nullopt;
  if (!fb.body) return fb;

  const auto probes = direction_grid(body.dimension(), 4 * directions.size());
  std::vector<double> gaps(probes.size());
  detail::parallel_for(probes.size(), jobs, [&](std::size_t i) {
    const double lowest = -fb.body->support(-probes[i]);
    gaps[i] = std::abs(cap_volume(body, probes[i], lowest) - delta) / delta;
  });
  fb.dupin_gap = *std::max_element(gaps.begin(), gaps.end());
  return fb;
}

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, std::size_t n_dirs) {
  if (a.dimension() != b.dimension())
    throw Error(ErrorCode::DimensionMismatch, "bodies differ in dimension");
  auto dirs = hausdorff_directions(a, n_dirs);
  for (const auto& f : b.facets()) dirs.push_back(f.normal);
  double dist = 0.0;
  for (const auto& u : dirs) dist = std::max(dist, std::abs(a.support(u) - b.support(u)));
  return dist;
}

double hausdorff_distance_to_ball(const ConvexBody& a, const Vector& center, double radius,
                                  std::size_t n_dirs) {
  if (center.size() != a.dimension())
    throw Error(ErrorCode::DimensionMismatch, "ball center has wrong dimension");
  double dist = 0.0;
  for (const auto& u : hausdorff_directions(a, n_dirs))
    dist = std::max(dist, std::abs(a.support(u) - (center.dot(u) + radius)));
  return dist;
}

BallLimitResult ball_limit_test(const ConvexBody& body, const std::vector<double>& deltas,
                                const BallLimitOptions& options) {
  if (deltas.empty()) throw Error(ErrorCode::InvalidInput, "no densities given");
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1]))
      throw Error(ErrorCode::InvalidInput, "delta sequence must decrease");
  }
  const auto dirs = direction_grid(body.dimension(), options.n_dirs);
  const double tol_eq = options.tol_eq.value_or(default_equilibrium_tolerance(body));

  BallLimitResult res;
  res.floats = true;
  for (double delta : deltas) {
    BallLimitStep step;
    step.delta = delta;
    ScanOptions scan_options;
    scan_options.jobs = options.jobs;
    const ScanResult scan = equilibrium_scan(body, delta, dirs, tol_eq, scan_options);
    step.verdict = scan.verdict;
    step.max_residual = scan.max_residual;
    step.tolerance = tol_eq;
    res.floats = res.floats && scan.verdict == ScanVerdict::FloatsAllDirections;

    std::vector<Vector> centers;
    for (const auto& r : scan.records) centers.push_back(r.center);
    const SphereFit fit = fit_sphere(centers);
    step.fit_center = fit.center;
    step.fit_radius = fit.radius;
    for (const auto& c : centers)
      step.fit_deviation = std::max(
          step.fit_deviation, std::abs((c - fit.center).norm() - fit.radius) / fit.radius);

    const FloatingBody fb = floating_body(body, delta, dirs, options.jobs);
    step.floating_distance = fb.body ? hausdorff_distance(*fb.body, body)
                                     : std::numeric_limits<double>::infinity();
    step.ball_distance = hausdorff_distance_to_ball(body, fit.center, fit.radius);
    res.steps.push_back(std::move(step));
  }

  bool decreasing = res.steps.size() >= 2;
  for (std::size_t i = 1; i < res.steps.size(); ++i) {
    decreasing = decreasing &&
                 res.steps[i].ball_distance < res.steps[i - 1].ball_distance &&
                 res.steps[i].floating_distance < res.steps[i - 1].floating_distance;
  }
  res.ball_certified = res.floats && decreasing;
  return res;
}

}  // namespace buoyancy
