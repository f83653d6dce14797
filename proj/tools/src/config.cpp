#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "buoyancy/body_io.hpp"
#include "buoyancy/zoo.hpp"
#include "json.hpp"

namespace buoyancy::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& source, const std::string& key,
                          const std::string& what) {
  throw Error(ErrorCode::InvalidInput, source + ": key '" + key + "': " + what);
}

template <class T>
void read(const json& doc, const char* key, T& into, const std::string& source) {
  if (!doc.contains(key) || doc[key].is_null()) return;
  try {
    into = doc[key].get<T>();
  } catch (const json::exception&) {
    bad_key(source, key, "wrong type");
  }
}

template <class T>
void read(const json& doc, const char* key, std::optional<T>& into, const std::string& source) {
  if (!doc.contains(key) || doc[key].is_null()) return;
  T value{};
  read(doc, key, value, source);
  into = value;
}

std::uint64_t seed_override(const char* text) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (end == text || *end != '\0')
    throw Error(ErrorCode::InvalidInput, "BUOYANCY_LAB_SEED must be a non-negative integer");
  return v;
}

}  // namespace

RunConfig config_from_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, source + ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, source + ": expected an object");
  static const char* known[] = {"body", "generator", "params", "N", "density", "delta",
                                "dirs", "tol_vol", "tol_eq", "tol_test", "h", "xi",
                                "n_chords", "limit_steps", "out", "detail", "jobs"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      bad_key(source, key, "unknown setting");
  }
  RunConfig cfg;
  read(doc, "body", cfg.body, source);
  read(doc, "generator", cfg.generator, source);
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) bad_key(source, "params", "expected an object");
    cfg.params = doc["params"].dump();
  }
  read(doc, "N", cfg.resolution, source);
  read(doc, "density", cfg.density, source);
  read(doc, "delta", cfg.delta, source);
  read(doc, "dirs", cfg.dirs, source);
  read(doc, "tol_vol", cfg.tol_vol, source);
  read(doc, "tol_eq", cfg.tol_eq, source);
  read(doc, "tol_test", cfg.tol_test, source);
  read(doc, "h", cfg.h, source);
  read(doc, "xi", cfg.xi, source);
  read(doc, "n_chords", cfg.n_chords, source);
  read(doc, "limit_steps", cfg.limit_steps, source);
  read(doc, "out", cfg.out, source);
  read(doc, "detail", cfg.detail, source);
  read(doc, "jobs", cfg.jobs, source);
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json doc;
  doc["body"] = cfg.body;
  doc["generator"] = cfg.generator;
  doc["params"] = json::parse(cfg.params);
  doc["N"] = cfg.resolution;
  doc["density"] = cfg.density ? json(*cfg.density) : json(nullptr);
  doc["delta"] = cfg.delta ? json(*cfg.delta) : json(nullptr);
  doc["dirs"] = cfg.dirs;
  doc["tol_vol"] = cfg.tol_vol;
  doc["tol_eq"] = cfg.tol_eq ? json(*cfg.tol_eq) : json(nullptr);
  doc["tol_test"] = cfg.tol_test ? json(*cfg.tol_test) : json(nullptr);
  doc["h"] = cfg.h;
  doc["xi"] = cfg.xi;
  doc["n_chords"] = cfg.n_chords;
  doc["limit_steps"] = cfg.limit_steps;
  doc["out"] = cfg.out;
  doc["detail"] = cfg.detail;
  doc["jobs"] = cfg.jobs;
  return doc.dump(2) + "\n";
}

Resolved resolve(const RunConfig& cfg) {
  if (cfg.body.empty() == cfg.generator.empty())
    throw Error(ErrorCode::InvalidInput, "give exactly one of --body and --generator");
  if (cfg.density && cfg.delta)
    throw Error(ErrorCode::InvalidInput, "give at most one of --density and --delta");
  if (cfg.dirs < 1) throw Error(ErrorCode::InvalidInput, "--dirs must be positive");
  if (cfg.jobs < 1) throw Error(ErrorCode::InvalidInput, "--jobs must be positive");
  if (!(cfg.tol_vol > 0.0) || (cfg.tol_eq && !(*cfg.tol_eq > 0.0)) ||
      (cfg.tol_test && !(*cfg.tol_test > 0.0)))
    throw Error(ErrorCode::InvalidInput, "tolerances must be positive");

  std::optional<BodyFile> file;
  if (!cfg.body.empty()) {
    std::ifstream in(cfg.body);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open body file '" + cfg.body + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    file = parse_body_file(buf.str(), cfg.body);
  } else {
    file = BodyFile{};
    file->generator = parse_generator_spec(cfg.generator, cfg.params, cfg.resolution);
  }
  if (file->generator && file->generator->name == "random_polytope") {
    if (const char* env = std::getenv("BUOYANCY_LAB_SEED"))
      file->generator->params["seed"] = {static_cast<double>(seed_override(env))};
  }

  Resolved r{build_body(*file), cfg.body.empty() ? "generator:" + cfg.generator : cfg.body,
             0.0, 0.0, ""};
  if (cfg.delta) {
    r.delta = *cfg.delta;
    r.density = r.delta / r.body.volume();
    r.delta_from = "delta";
  } else {
    r.density = cfg.density.value_or(0.5);
    if (!(r.density > 0.0 && r.density < 1.0))
      throw Error(ErrorCode::DensityOutOfRange, "density out of range");
    r.delta = r.density * r.body.volume();
    r.delta_from = "density";
  }
  if (!(r.delta > 0.0 && r.delta < r.body.volume()))
    throw Error(ErrorCode::DensityOutOfRange, "density out of range");
  return r;
}

}  // namespace buoyancy::cli
