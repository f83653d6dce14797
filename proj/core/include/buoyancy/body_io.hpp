#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "buoyancy/convex_body.hpp"
#include "buoyancy/zoo.hpp"

namespace buoyancy {

/// Contents of a body file, either
///   {"dimension": d, "vertices": [[x, y, ...], ...], "mesh_facets": n}
/// ("mesh_facets" optional) or
///   {"generator": "name", "params": {...}, "N": resolution}.
struct BodyFile {
  std::optional<GeneratorSpec> generator;
  int dimension = 0;
  std::vector<Vector> vertices;
  int mesh_facets = 0;
};

/// Throws Error(MalformedBodyFile) naming the line for syntax errors and the
/// field path for schema errors, prefixed by `source`.
BodyFile parse_body_file(std::string_view text, const std::string& source = "<input>");

/// Generator parameters given as a JSON object. Numbers, booleans, lists of
/// numbers and lists of number lists (flattened) are accepted.
GeneratorSpec parse_generator_spec(const std::string& name, std::string_view params_json,
                                   int resolution = 0);

ConvexBody build_body(const BodyFile& file);

/// Reads and builds the body in `path`.
ConvexBody load_body(const std::string& path);

/// Explicit-vertex body file for `body`, round-trip exact.
std::string body_file_json(const ConvexBody& body);

}  // namespace buoyancy
