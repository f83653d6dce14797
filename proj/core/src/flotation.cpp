#include "buoyancy/flotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/QR>

#include "buoyancy/directions.hpp"
#include "buoyancy/kernel.hpp"
#include "detail/parallel.hpp"

namespace buoyancy {

namespace {

// Residual scale of meshed smooth bodies: tol_eq = kMeshResidualScale / facets.
constexpr double kMeshResidualScale = 4.0;

constexpr int kMaxBisections = 200;
constexpr int kMaxRefineEvaluations = 160;
constexpr int kMaxSolverIterations = 30;

std::vector<std::vector<std::size_t>> nearest_neighbours(
    const std::vector<Vector>& dirs, std::size_t k) {
  const std::size_t n = dirs.size();
  k = std::min(k, n - 1);
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) cand.emplace_back(-dirs[i].dot(dirs[j]), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k),
                      cand.end());
    for (std::size_t m = 0; m < k; ++m) out[i].push_back(cand[m].second);
  }
  return out;
}

// Equilibrium map in tangent coordinates u about xi0: with w = C(xi(u)) - C(K)
// and xi(u) proportional to xi0 + sum u_j e_j, F_k = e_k . w - u_k (xi0 . w)
// vanishes exactly at equilibria.
struct TangentChart {
  Vector xi0;
  std::vector<Vector> frame;

  Vector direction(const Vector& u) const {
    Vector y = xi0;
    for (std::size_t j = 0; j < frame.size(); ++j) y += u[static_cast<Eigen::Index>(j)] * frame[j];
    return y.normalized();
  }
  Vector map(const BuoyancyRecord& rec, const Vector& u) const {
    const Vector w = rec.center - rec.body_centroid;
    const double along = xi0.dot(w);
    Vector f(static_cast<Eigen::Index>(frame.size()));
    for (std::size_t k = 0; k < frame.size(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      f[kk] = frame[k].dot(w) - u[kk] * along;
    }
    return f;
  }
};

// Levenberg-Marquardt on the equilibrium map, steps bounded by `radius`.
BuoyancyRecord solve_equilibrium(const ConvexBody& body, double delta, BuoyancyRecord best,
                                 double radius, double tol_eq, double waterline_tol,
                                 int& evaluations) {
  const double fd = 1e-6;
  double mu = 1e-3;
  for (int iter = 0; iter < kMaxSolverIterations; ++iter) {
    if (best.residual <= 0.1 * tol_eq || evaluations >= kMaxRefineEvaluations) break;
    const TangentChart chart{best.xi, orthonormal_complement(best.xi)};
    const auto m = static_cast<Eigen::Index>(chart.frame.size());
    const Vector u0 = Vector::Zero(m);
    const Vector f0 = chart.map(best, u0);
    Matrix jac(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      Vector u = u0;
      u[j] = fd;
      ++evaluations;
      const BuoyancyRecord rec = buoyancy_center(body, chart.direction(u), delta, waterline_tol);
      jac.col(j) = (chart.map(rec, u) - f0) / fd;
    }
    const Matrix jtj = jac.transpose() * jac;
    const Vector g = jac.transpose() * f0;
    bool accepted = false;
    for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
      const double damping = mu * std::max(jtj.diagonal().maxCoeff(), 1e-300);
      Vector step = (jtj + damping * Matrix::Identity(m, m)).ldlt().solve(-g);
      if (!step.allFinite()) break;
      if (step.norm() > radius) step *= radius / step.norm();
      ++evaluations;
      BuoyancyRecord rec;
      try {
        rec = buoyancy_center(body, chart.direction(step), delta, waterline_tol);
      } catch (const Error&) {
        mu *= 10.0;
        continue;
      }
      if (rec.residual < best.residual) {
        best = std::move(rec);
        mu = std::max(mu * 0.3, 1e-12);
        accepted = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return best;
}

BuoyancyRecord refine_minimum(const ConvexBody& body, double delta,
                              BuoyancyRecord best, double step, double tol_eq,
                              double waterline_tol) {
  int evaluations = 0;
  try {
    best = solve_equilibrium(body, delta, std::move(best), step, tol_eq, waterline_tol,
                             evaluations);
  } catch (const Error&) {
  }
  // Pattern search with the remaining budget.
  while (step > 1e-8 && evaluations < kMaxRefineEvaluations &&
         best.residual > 0.1 * tol_eq) {
    bool improved = false;
    const auto tangents = orthonormal_complement(best.xi);
    for (const auto& e : tangents) {
      for (double sign : {1.0, -1.0}) {
        Vector y = rotate_toward(best.xi, e, sign * step);
        y.normalize();
        ++evaluations;
        BuoyancyRecord rec;
        try {
          rec = buoyancy_center(body, y, delta, waterline_tol);
        } catch (const Error&) {
          continue;
        }
        if (rec.residual < best.residual) {
          best = std::move(rec);
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

Waterline find_waterline(const ConvexBody& body, const Vector& xi, double delta,
                         double tol) {
  const double total = body.volume();
  if (!(delta > 0.0 && delta < total))
    throw Error(ErrorCode::DensityOutOfRange, "density out of range");
  if (!(tol > 0.0))
    throw Error(ErrorCode::InvalidInput, "waterline tolerance must be positive");
  if (xi.size() != body.dimension())
    throw Error(ErrorCode::DimensionMismatch, "direction has wrong dimension");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : body.vertices()) {
    const double s = xi.dot(v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const double target = tol * total;
  double t = 0.5 * (lo + hi);
  double vol = cap_volume(body, xi, t);
  for (int it = 0; it < kMaxBisections && std::abs(vol - delta) > target; ++it) {
    if (vol < delta) lo = t;
    else hi = t;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    t = mid;
    vol = cap_volume(body, xi, t);
  }
  return {xi, t, delta, vol};
}

double residual_angle(const Vector& xi, const Vector& body_centroid,
                      const Vector& buoyancy_center, double eps) {
  const Vector line = body_centroid - buoyancy_center;
  const double len = line.norm();
  if (!(len > eps))
    throw Error(ErrorCode::DegenerateBuoyancyLine, "degenerate buoyancy line");
  return angle_between(xi, line / len);
}

BuoyancyRecord buoyancy_center(const ConvexBody& body, const Vector& xi,
                               double delta, double tol) {
  const Waterline w = find_waterline(body, xi, delta, tol);
  const CapMoments cap = cap_moments(body, xi, w.t);
  BuoyancyRecord rec;
  rec.xi = xi;
  rec.t = w.t;
  rec.volume = cap.volume;
  rec.center = cap.centroid;
  rec.body_centroid = body.centroid();
  rec.residual =
      residual_angle(xi, rec.body_centroid, rec.center, body.geom_tolerance());
  return rec;
}

double equilibrium_residual(const ConvexBody& body, const Vector& xi,
                            double delta, double tol) {
  return buoyancy_center(body, xi, delta, tol).residual;
}

SphereFit fit_sphere(const std::vector<Vector>& points) {
  if (points.empty())
    throw Error(ErrorCode::InvalidInput, "sphere fit needs points");
  const auto d = points[0].size();
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < d + 1)
    throw Error(ErrorCode::InvalidInput,
                "sphere fit needs at least d + 1 points");
  Vector mean = Vector::Zero(d);
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(n);

  // |p|^2 = 2 c . p + k, solved in coordinates centred at the mean.
  Matrix a(n, d + 1);
  Vector b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector q = points[static_cast<std::size_t>(i)] - mean;
    a.row(i).head(d) = 2.0 * q.transpose();
    a(i, d) = 1.0;
    b[i] = q.squaredNorm();
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  if (qr.rank() < d + 1)
    throw Error(ErrorCode::InvalidInput, "sphere fit is rank deficient");
  const Vector x = qr.solve(b);
  SphereFit fit;
  fit.center = mean + x.head(d);
  fit.radius = std::sqrt(std::max(0.0, x[d] + x.head(d).squaredNorm()));
  return fit;
}

SurfaceOfCenters sample_surface_of_centers(const ConvexBody& body, double delta,
                                           const std::vector<Vector>& directions,
                                           std::size_t jobs) {
  if (directions.empty())
    throw Error(ErrorCode::InvalidInput, "no directions given");
  SurfaceOfCenters out;
  out.directions = directions;
  out.centers.resize(directions.size());
  detail::parallel_for(directions.size(), jobs, [&](std::size_t i) {
    const Waterline w = find_waterline(body, directions[i], delta);
    out.centers[i] = cap_moments(body, directions[i], w.t).centroid;
  });
  const SphereFit fit = fit_sphere(out.centers);
  out.center = fit.center;
  double sum = 0.0;
  for (const auto& c : out.centers) sum += (c - fit.center).norm();
  out.mean_radius = sum / static_cast<double>(out.centers.size());
  for (const auto& c : out.centers) {
    out.max_deviation =
        std::max(out.max_deviation,
                 std::abs((c - fit.center).norm() - out.mean_radius) /
                     out.mean_radius);
  }
  return out;
}

double default_equilibrium_tolerance(const ConvexBody& body) {
  if (!body.is_mesh()) return kExactEquilibriumTol;
  return std::max(kExactEquilibriumTol,
                  kMeshResidualScale / static_cast<double>(body.mesh_facets()));
}

ScanResult equilibrium_scan(const ConvexBody& body, double delta,
                            std::size_t n_dirs, double tol_eq,
                            const ScanOptions& options) {
  const std::size_t minimum = body.dimension() == 2 ? 8 : 12;
  if (n_dirs < minimum)
    throw Error(ErrorCode::InvalidInput,
                "equilibrium scan needs at least " + std::to_string(minimum) +
                    " directions");
  return equilibrium_scan(body, delta, direction_grid(body.dimension(), n_dirs),
                          tol_eq, options);
}

ScanResult equilibrium_scan(const ConvexBody& body, double delta,
                            const std::vector<Vector>& directions,
                            double tol_eq, const ScanOptions& options) {
  if (directions.size() < 2)
    throw Error(ErrorCode::InvalidInput, "equilibrium scan needs directions");
  if (!(tol_eq > 0.0))
    throw Error(ErrorCode::InvalidInput, "tol_eq must be positive");

  ScanResult result;
  result.tolerance = tol_eq;
  result.records.resize(directions.size());
  detail::parallel_for(directions.size(), options.jobs, [&](std::size_t i) {
    result.records[i] =
        buoyancy_center(body, directions[i], delta, options.waterline_tol);
  });
  for (const auto& r : result.records)
    result.max_residual = std::max(result.max_residual, r.residual);
  result.verdict = result.max_residual <= tol_eq ? ScanVerdict::FloatsAllDirections
                                                 : ScanVerdict::No;
  if (result.verdict == ScanVerdict::FloatsAllDirections || !options.refine)
    return result;

  const int d = body.dimension();
  const double spacing = grid_spacing(d, directions.size());
  const auto neighbours = nearest_neighbours(directions, d == 2 ? 2 : 6);
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double r = result.records[i].residual;
    const bool is_min = std::all_of(
        neighbours[i].begin(), neighbours[i].end(),
        [&](std::size_t j) { return r <= result.records[j].residual; });
    if (is_min) minima.push_back(i);
  }

  std::vector<BuoyancyRecord> refined(minima.size());
  detail::parallel_for(minima.size(), options.jobs, [&](std::size_t m) {
    refined[m] = refine_minimum(body, delta, result.records[minima[m]],
                                0.5 * spacing, tol_eq, options.waterline_tol);
  });
  std::stable_sort(refined.begin(), refined.end(),
                   [](const auto& a, const auto& b) { return a.residual < b.residual; });
  for (auto& r : refined) {
    if (r.residual > tol_eq) continue;
    const bool distinct = std::none_of(
        result.equilibria.begin(), result.equilibria.end(),
        [&](const auto& e) { return angle_between(e.xi, r.xi) < spacing; });
    if (distinct) result.equilibria.push_back(std::move(r));
  }
  return result;
}

}  // namespace buoyancy
