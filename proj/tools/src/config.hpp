#pragma once

#include <optional>
#include <string>
#include <vector>

#include "buoyancy/convex_body.hpp"

namespace buoyancy::cli {

/// Effective settings of one run. Flags override values read with --config.
struct RunConfig {
  std::string body;       // body file path
  std::string generator;  // generator name, used when body is empty
  std::string params = "{}";
  int resolution = 0;     // N; 0 selects the generator default
  std::optional<double> density;
  std::optional<double> delta;
  int dirs = 200;
  double tol_vol = 1e-10;
  std::optional<double> tol_eq;
  std::optional<double> tol_test;
  double h = 1e-3;
  std::vector<double> xi;
  int n_chords = 16;
  int limit_steps = 0;
  std::string out;
  std::string detail;
  int jobs = 1;
};

/// Throws Error(InvalidInput) naming the offending key.
RunConfig config_from_json(const std::string& text, const std::string& source);

std::string config_to_json(const RunConfig& cfg);

struct Resolved {
  ConvexBody body;
  std::string source;
  double delta = 0.0;
  double density = 0.0;
  std::string delta_from;  // "density" or "delta"
};

/// Loads or generates the body and converts density to volume. Applies the
/// BUOYANCY_LAB_SEED override to seeded generators.
Resolved resolve(const RunConfig& cfg);

}  // namespace buoyancy::cli
