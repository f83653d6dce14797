#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "buoyancy/convex_body.hpp"
#include "buoyancy/types.hpp"

namespace buoyancy {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed algorithm so that seeded
/// bodies reproduce across platforms and implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Named generator with numeric parameters; scalars are one-element vectors.
struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::vector<double>> params;
  int resolution = 0;  // mesh resolution N; 0 selects the generator default
};

/// Sphere of radius r: regular N-gon (d = 2), or for d = 3 the hull of a
/// Fibonacci lattice of ceil(N/2) points and their antipodes.
ConvexBody make_ball(double r, int n, int dimension = 3);

/// Linear image of make_ball with the given semi-axes (d = number of axes).
ConvexBody make_ellipsoid(const Vector& semi_axes, int n);

/// Axis-aligned box [lo, hi].
ConvexBody make_box(const Vector& lo, const Vector& hi);

/// Box with edge lengths (a, b, c), centred at the origin or with a corner there.
ConvexBody make_box(double a, double b, double c, bool centered = true);

/// [0, 1]^d.
ConvexBody make_unit_cube(int dimension = 3);

/// Hull of n seeded uniform samples on the unit sphere. A degenerate hull is
/// regenerated with seed + 1 (up to 64 times).
ConvexBody make_random_polytope(int n_vertices, std::uint64_t seed,
                                int dimension = 3);

/// Solid of revolution about the z axis. `profile` lists (radius, height)
/// pairs with strictly increasing heights; radius must be concave in height.
ConvexBody make_revolution(const std::vector<std::pair<double, double>>& profile,
                           int n_angular);

/// Zindler curve parameters: chord length L and the odd harmonics
/// f(s) = sum_k cos_coeffs[k] cos((2k+3)s) + sin_coeffs[k] sin((2k+3)s)
/// of the midpoint speed m'(s) = f(s) u(s).
struct ZindlerParams {
  double chord_length = 2.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

/// Sampled Zindler curve: boundary points p(s_i) = m(s_i) + (L/2) u(s_i) at
/// s_i = 2 pi i / n. Throws Error(InvalidGenerator) naming the first failed
/// check (closure, local convexity, simple turning) for bad parameters.
ConvexBody make_zindler(const ZindlerParams& params, int n);

/// base x [0, length] for a polygon base (d = 2 -> d = 3).
ConvexBody make_prism(const ConvexBody& base, double length);

/// Dispatch by generator name: ball, ellipsoid, box, cube, random_polytope,
/// revolution, zindler.
ConvexBody make_body(const GeneratorSpec& spec);

}  // namespace buoyancy
