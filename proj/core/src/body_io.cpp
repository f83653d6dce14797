#include "buoyancy/body_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace buoyancy {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& source, const std::string& what) {
  throw Error(ErrorCode::MalformedBodyFile, source + ": " + what);
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    malformed(source, "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": invalid JSON (" + e.what() + ")");
  }
}

std::vector<double> numbers_of(const json& value, const std::string& source,
                               const std::string& field) {
  if (value.is_number()) return {value.get<double>()};
  if (value.is_boolean()) return {value.get<bool>() ? 1.0 : 0.0};
  if (!value.is_array())
    malformed(source, "field '" + field + "': expected a number or a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json& item = value[i];
    const std::string path = field + "/" + std::to_string(i);
    if (item.is_number()) {
      out.push_back(item.get<double>());
    } else if (item.is_array()) {
      for (std::size_t k = 0; k < item.size(); ++k) {
        if (!item[k].is_number())
          malformed(source, "field '" + path + "/" + std::to_string(k) + "': expected a number");
        out.push_back(item[k].get<double>());
      }
    } else {
      malformed(source, "field '" + path + "': expected a number or a list of numbers");
    }
  }
  return out;
}

GeneratorSpec generator_from(const json& params, const std::string& name, int resolution,
                             const std::string& source, const std::string& field) {
  if (!params.is_object()) malformed(source, "field '" + field + "': expected an object");
  GeneratorSpec spec;
  spec.name = name;
  spec.resolution = resolution;
  for (const auto& [key, value] : params.items())
    spec.params[key] = numbers_of(value, source, field + "/" + key);
  return spec;
}

int integer_field(const json& doc, const char* key, const std::string& source) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    malformed(source, std::string("field '/") + key + "': expected an integer");
  return v.get<int>();
}

}  // namespace

BodyFile parse_body_file(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) malformed(source, "top level must be an object");
  BodyFile file;

  if (doc.contains("generator")) {
    if (!doc["generator"].is_string())
      malformed(source, "field '/generator': expected a string");
    const int n = doc.contains("N") ? integer_field(doc, "N", source) : 0;
    if (n < 0) malformed(source, "field '/N': must be positive");
    const json params = doc.contains("params") ? doc["params"] : json::object();
    file.generator = generator_from(params, doc["generator"].get<std::string>(), n, source,
                                    "/params");
    return file;
  }

  if (!doc.contains("vertices"))
    malformed(source, "expected a 'vertices' or a 'generator' field");
  const json& verts = doc["vertices"];
  if (!verts.is_array() || verts.empty())
    malformed(source, "field '/vertices': expected a non-empty list of points");
  file.dimension = doc.contains("dimension") ? integer_field(doc, "dimension", source)
                                             : static_cast<int>(verts[0].size());
  if (file.dimension != 2 && file.dimension != 3)
    malformed(source, "field '/dimension': unsupported dimension " +
                          std::to_string(file.dimension) + " (supported: 2, 3)");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const json& p = verts[i];
    const std::string path = "/vertices/" + std::to_string(i);
    if (!p.is_array() || p.size() != static_cast<std::size_t>(file.dimension))
      malformed(source, "field '" + path + "': expected " + std::to_string(file.dimension) +
                            " coordinates");
    Vector v(file.dimension);
    for (int k = 0; k < file.dimension; ++k) {
      if (!p[static_cast<std::size_t>(k)].is_number())
        malformed(source, "field '" + path + "/" + std::to_string(k) + "': expected a number");
      v[k] = p[static_cast<std::size_t>(k)].get<double>();
    }
    file.vertices.push_back(std::move(v));
  }
  if (doc.contains("mesh_facets")) file.mesh_facets = integer_field(doc, "mesh_facets", source);
  return file;
}

GeneratorSpec parse_generator_spec(const std::string& name, std::string_view params_json,
                                   int resolution) {
  const json params = params_json.empty() ? json::object() : parse_json(params_json, "--params");
  return generator_from(params, name, resolution, "--params", "");
}

ConvexBody build_body(const BodyFile& file) {
  if (file.generator) return make_body(*file.generator);
  ConvexBody body = ConvexBody::hull(file.vertices);
  return file.mesh_facets > 0 ? body.with_mesh_tag(file.mesh_facets) : body;
}

ConvexBody load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open body file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return build_body(parse_body_file(buf.str(), path));
}

std::string body_file_json(const ConvexBody& body) {
  json doc;
  doc["dimension"] = body.dimension();
  json verts = json::array();
  for (const auto& v : body.vertices())
    verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  doc["vertices"] = std::move(verts);
  if (body.is_mesh()) doc["mesh_facets"] = body.mesh_facets();
  return doc.dump(2) + "\n";
}

}  // namespace buoyancy
