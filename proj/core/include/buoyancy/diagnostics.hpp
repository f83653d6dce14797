#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "buoyancy/convex_body.hpp"
#include "buoyancy/flotation.hpp"
#include "buoyancy/kernel.hpp"
#include "buoyancy/types.hpp"

namespace buoyancy {

/// Radial function of a section about its centroid, in frame coordinates
/// (w is a unit vector of R^{d-1}).
double section_radial(const Section& sec, const Vector& w);

/// Radial function of a body about a point of its interior.
double radial_function(const ConvexBody& body, const Vector& origin, const Vector& w);

/// Support function h(u) = max over vertices of u . v.
double support_function(const ConvexBody& body, const Vector& u);

/// Tolerance for the moment and isotropy tests suited to the body, scaled
/// with 1/mesh_facets for meshes of smooth bodies.
double default_test_tolerance(const ConvexBody& body);

/// Tolerance of the equichordal test; radial errors are raised to d + 1.
double default_equichordal_tolerance(const ConvexBody& body);

struct MomentRecord {
  Vector xi;
  Vector eigenvalues;         // of the section moment matrix J, ascending
  double off_diagonal = 0.0;  // max |J(j,k)|, j != k, in the section frame
  double trace = 0.0;
};

struct MomentTestResult {
  std::vector<MomentRecord> records;
  double c = 0.0;               // median of trace / (d - 1)
  double target = 0.0;          // (d + 1) delta R, equal to (d + 1) c
  double implied_radius = 0.0;  // c / delta
  double max_diagonal_deviation = 0.0;  // max |lambda - c| / c
  double max_off_diagonal = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Every waterline section moment matrix J must equal c I for one constant c.
MomentTestResult principal_moment_test(const ConvexBody& body, double delta,
                                       const std::vector<Vector>& directions,
                                       double tol, std::size_t jobs = 1);

struct EquichordalRecord {
  Vector xi;
  double min_sum = 0.0;
  double max_sum = 0.0;
};

struct EquichordalResult {
  std::vector<EquichordalRecord> records;
  double constant = 0.0;       // median of all sums
  double max_deviation = 0.0;  // max |sum - constant| / constant
  double tolerance = 0.0;
  bool pass = false;
};

/// rho^{d+1}(w) + rho^{d+1}(-w) about the section centroid over n_chords
/// chord directions per waterline section (one chord when d = 2).
EquichordalResult equichordal_test(const ConvexBody& body, double delta,
                                   const std::vector<Vector>& directions,
                                   std::size_t n_chords, double tol,
                                   std::size_t jobs = 1);

struct IsotropyRecord {
  Vector xi;
  Matrix second_moments;  // M(xi) in the frame of xi^perp
  Vector first_moments;
};

struct IsotropyResult {
  std::vector<IsotropyRecord> records;
  double c = 0.0;
  double max_diagonal_deviation = 0.0;
  double max_off_diagonal = 0.0;
  double max_first_moment = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Second moments of f over each equator S^{d-1} ∩ xi^perp (trapezoid rule on
/// n_nodes >= 64 nodes for d = 3; the two points +-eta for d = 2).
IsotropyResult isotropy_on_equators_test(const std::function<double(const Vector&)>& f,
                                         int dimension,
                                         const std::vector<Vector>& directions,
                                         double tol, std::size_t n_nodes = 128);

/// f = rho_K^{d+1} about the origin. Throws Error(RequiresCentralSymmetry)
/// unless K = -K with its centroid at the origin.
IsotropyResult isotropy_on_equators_test(const ConvexBody& body,
                                         const std::vector<Vector>& directions,
                                         double tol, std::size_t n_nodes = 128);

/// K_delta = K ∩ {p : xi_i . p >= t(xi_i)} over the sampled directions.
struct FloatingBody {
  double delta = 0.0;
  std::vector<Vector> directions;
  std::vector<HalfSpace> halfspaces;  // stored as {-xi . p <= -t}
  std::optional<ConvexBody> body;     // nullopt when empty
  /// Largest |cap - delta| / delta for the volume cut by a support plane of
  /// K_delta, over a probe grid four times denser. Zero for the Dupin
  /// floating body.
  double dupin_gap = 0.0;
};

FloatingBody floating_body(const ConvexBody& body, double delta,
                           const std::vector<Vector>& directions,
                           std::size_t jobs = 1);

/// sup |h_A - h_B| over a direction grid of n_dirs points together with the
/// facet normals of both bodies. Throws Error(DimensionMismatch).
double hausdorff_distance(const ConvexBody& a, const ConvexBody& b,
                          std::size_t n_dirs = 4000);

/// Same, with the ball B_r(center) as the second body.
double hausdorff_distance_to_ball(const ConvexBody& a, const Vector& center,
                                  double radius, std::size_t n_dirs = 4000);

struct BallLimitStep {
  double delta = 0.0;
  ScanVerdict verdict = ScanVerdict::No;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Vector fit_center;
  double fit_radius = 0.0;
  double fit_deviation = 0.0;
  double floating_distance = 0.0;  // d(K_delta, K), infinite when K_delta is empty
  double ball_distance = 0.0;      // d(B_r(fit center), K)
};

struct BallLimitResult {
  std::vector<BallLimitStep> steps;
  bool floats = false;          // every scan floats in all directions
  bool ball_certified = false;  // floats, and both distances decrease along the sequence
};

struct BallLimitOptions {
  std::size_t n_dirs = 200;
  std::optional<double> tol_eq;
  std::size_t jobs = 1;
};

/// Certification needs at least two densities; a single delta only reports
/// whether the body floats.
BallLimitResult ball_limit_test(const ConvexBody& body,
                                const std::vector<double>& deltas,
                                const BallLimitOptions& options = {});

}  // namespace buoyancy
