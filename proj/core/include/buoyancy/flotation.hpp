#pragma once

#include <cstddef>
#include <vector>

#include "buoyancy/convex_body.hpp"
#include "buoyancy/types.hpp"

namespace buoyancy {

/// Cutting hyperplane {p : xi . p = t} that leaves volume `delta` below it.
struct Waterline {
  Vector xi;
  double t = 0.0;
  double delta = 0.0;
  double achieved = 0.0;
};

struct BuoyancyRecord {
  Vector xi;
  double t = 0.0;
  double volume = 0.0;    // achieved submerged volume
  Vector center;          // buoyancy center C_delta(xi)
  Vector body_centroid;   // C(K)
  double residual = 0.0;  // angle between xi and C(K) - C_delta(xi), radians
};

struct SurfaceOfCenters {
  std::vector<Vector> directions;
  std::vector<Vector> centers;
  Vector center;              // least-squares sphere center
  double mean_radius = 0.0;
  double max_deviation = 0.0; // max | |C_i - center| - R | / R
};

enum class ScanVerdict { FloatsAllDirections, No };

struct ScanResult {
  std::vector<BuoyancyRecord> records;  // in grid order
  ScanVerdict verdict = ScanVerdict::No;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Refined near-equilibrium directions (residual <= tolerance), merged so
  /// that no two are closer than the grid spacing. Empty when the verdict is
  /// FloatsAllDirections.
  std::vector<BuoyancyRecord> equilibria;
};

struct ScanOptions {
  std::size_t jobs = 1;
  double waterline_tol = kWaterlineTol;
  bool refine = true;
};

/// Bisection on t over the support interval of xi.
/// Throws Error(DensityOutOfRange) unless 0 < delta < volume(body).
Waterline find_waterline(const ConvexBody& body, const Vector& xi, double delta,
                         double tol = kWaterlineTol);

BuoyancyRecord buoyancy_center(const ConvexBody& body, const Vector& xi,
                               double delta, double tol = kWaterlineTol);

/// Angle between xi and C(K) - C_delta(xi). Throws
/// Error(DegenerateBuoyancyLine) when the two centers coincide.
double equilibrium_residual(const ConvexBody& body, const Vector& xi,
                            double delta, double tol = kWaterlineTol);

/// Same angle for given centers.
double residual_angle(const Vector& xi, const Vector& body_centroid,
                      const Vector& buoyancy_center, double eps);

SurfaceOfCenters sample_surface_of_centers(const ConvexBody& body, double delta,
                                           const std::vector<Vector>& directions,
                                           std::size_t jobs = 1);

/// Equilibrium tolerance suited to the body: kExactEquilibriumTol for exact
/// polytopes, scaled with 1/mesh_facets for meshes of smooth bodies.
double default_equilibrium_tolerance(const ConvexBody& body);

/// Residual scan over a deterministic grid (Fibonacci sphere for d = 3,
/// uniform angles for d = 2) with local refinement of minima.
ScanResult equilibrium_scan(const ConvexBody& body, double delta,
                            std::size_t n_dirs, double tol_eq,
                            const ScanOptions& options = {});

/// Scan over caller-supplied directions.
ScanResult equilibrium_scan(const ConvexBody& body, double delta,
                            const std::vector<Vector>& directions,
                            double tol_eq, const ScanOptions& options = {});

/// Algebraic least-squares sphere (circle) fit; returns center and radius.
struct SphereFit {
  Vector center;
  double radius = 0.0;
};
SphereFit fit_sphere(const std::vector<Vector>& points);

}  // namespace buoyancy
