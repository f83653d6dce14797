#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "buoyancy/body_io.hpp"
#include "buoyancy/diagnostics.hpp"
#include "buoyancy/directions.hpp"
#include "buoyancy/dupin.hpp"
#include "buoyancy/flotation.hpp"
#include "buoyancy/kernel.hpp"
#include "config.hpp"
#include "json.hpp"

namespace buoyancy::cli {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr double kMinDupin3Tol = 1e-4;
constexpr double kMinDecayOrder = 1.9;
constexpr double kLinearOrderBand = 0.1;
const std::vector<double> kProbeAngles = {0.01, 0.05, 0.1, 0.2};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered vec(const Vector& v) {
  ordered a = ordered::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// Non-finite values become null in JSON.
ordered finite(double v) { return std::isfinite(v) ? ordered(v) : ordered(nullptr); }

const char* verdict_name(ScanVerdict v) {
  return v == ScanVerdict::FloatsAllDirections ? "FLOATS_ALL_DIRECTIONS" : "NO";
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::InvalidInput, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct Context {
  RunConfig cfg;
  Resolved run;

  int d() const { return run.body.dimension(); }

  Vector xi() const {
    if (cfg.xi.empty()) {
      Vector e = Vector::Zero(d());
      e[d() - 1] = 1.0;
      return e;
    }
    if (static_cast<int>(cfg.xi.size()) != d())
      throw Error(ErrorCode::DimensionMismatch, "--xi has wrong dimension");
    Vector v = Eigen::Map<const Vector>(cfg.xi.data(), d());
    if (!(v.norm() > 0.0)) throw Error(ErrorCode::InvalidInput, "--xi must be non-zero");
    return v.normalized();
  }

  double tol_eq() const { return cfg.tol_eq.value_or(default_equilibrium_tolerance(run.body)); }
  std::vector<Vector> directions() const {
    return direction_grid(d(), static_cast<std::size_t>(cfg.dirs));
  }
  std::size_t jobs() const { return static_cast<std::size_t>(cfg.jobs); }
};

ordered body_summary(const Context& c) {
  const ConvexBody& b = c.run.body;
  return ordered{{"source", c.run.source},
                 {"dimension", b.dimension()},
                 {"vertices", b.vertices().size()},
                 {"facets", b.facets().size()},
                 {"volume", b.volume()},
                 {"centroid", vec(b.centroid())},
                 {"extent", b.extent()},
                 {"mesh_facets", b.mesh_facets()}};
}

ordered density_block(const Context& c) {
  return ordered{{"density", c.run.density},
                 {"delta", c.run.delta},
                 {"delta_from", c.run.delta_from},
                 {"conversion", "delta = density * volume = " + num(c.run.density) + " * " +
                                    num(c.run.body.volume()) + " = " + num(c.run.delta)}};
}

ordered record_json(const BuoyancyRecord& r) {
  return ordered{{"xi", vec(r.xi)},         {"t", r.t},
                 {"volume", r.volume},      {"center", vec(r.center)},
                 {"body_centroid", vec(r.body_centroid)},
                 {"residual_rad", r.residual}};
}

// --- waterline -------------------------------------------------------------

int cmd_waterline(const Context& c, std::ostream& out) {
  const BuoyancyRecord r = buoyancy_center(c.run.body, c.xi(), c.run.delta, c.cfg.tol_vol);
  ordered doc{{"body", body_summary(c)}, {"flotation", density_block(c)}};
  doc["record"] = record_json(r);
  Sink sink(c.cfg.out, out);
  sink.stream() << doc.dump(2) << "\n";
  return kExitPass;
}

// --- scan ------------------------------------------------------------------

ScanResult run_scan(const Context& c) {
  ScanOptions opt;
  opt.jobs = c.jobs();
  opt.waterline_tol = c.cfg.tol_vol;
  return equilibrium_scan(c.run.body, c.run.delta, c.directions(), c.tol_eq(), opt);
}

ordered scan_summary(const Context& c, const ScanResult& s) {
  ordered eq = ordered::array();
  for (const auto& r : s.equilibria)
    eq.push_back(ordered{{"xi", vec(r.xi)}, {"residual_rad", r.residual}});
  std::vector<Vector> centers;
  for (const auto& r : s.records) centers.push_back(r.center);
  const SphereFit fit = fit_sphere(centers);
  return ordered{{"verdict", verdict_name(s.verdict)},
                 {"directions", s.records.size()},
                 {"max_residual_rad", s.max_residual},
                 {"tol_eq", s.tolerance},
                 {"equilibria", eq},
                 {"surface_fit_center", vec(fit.center)},
                 {"surface_fit_radius", fit.radius},
                 {"body_centroid", vec(c.run.body.centroid())}};
}

void write_scan_csv(std::ostream& os, int d, const ScanResult& s) {
  os << "dir_index";
  for (int k = 1; k <= d; ++k) os << ",xi_" << k;
  os << ",t,volume";
  for (int k = 1; k <= d; ++k) os << ",c_" << k;
  os << ",residual_rad\n";
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& r = s.records[i];
    os << i;
    for (int k = 0; k < d; ++k) os << ',' << num(r.xi[k]);
    os << ',' << num(r.t) << ',' << num(r.volume);
    for (int k = 0; k < d; ++k) os << ',' << num(r.center[k]);
    os << ',' << num(r.residual) << '\n';
  }
}

int cmd_scan(const Context& c, std::ostream& out, std::ostream& err) {
  const ScanResult s = run_scan(c);
  Sink sink(c.cfg.out, out);
  write_scan_csv(sink.stream(), c.d(), s);
  ordered summary = scan_summary(c, s);
  summary["flotation"] = density_block(c);
  err << summary.dump(2) << "\n";
  return s.verdict == ScanVerdict::FloatsAllDirections ? kExitPass : kExitFail;
}

// --- dupin -----------------------------------------------------------------

ordered run_dupin(const Context& c, bool& pass) {
  const ConvexBody& body = c.run.body;
  const double delta = c.run.delta;
  const Vector xi = c.xi();
  const auto frame = orthonormal_complement(xi);
  const double tol3 = std::max(kMinDupin3Tol, c.cfg.tol_test.value_or(0.0));
  ordered doc;

  const Dupin1Report d1 = check_dupin1(body, delta, xi, kProbeAngles);
  doc["dupin1"] = ordered{{"xi", vec(xi)},
                          {"probe_angles", kProbeAngles},
                          {"probes", d1.probes.size()},
                          {"worst_margin", d1.worst},
                          {"tolerance", d1.tolerance},
                          {"pass", d1.pass}};

  const Dupin2Report d2 = check_dupin2(body, delta, xi, frame[0], c.cfg.h);
  const bool quadratic = !d2.centroid_order || *d2.centroid_order >= kMinDecayOrder;
  const bool linear =
      d2.offset_order && std::abs(*d2.offset_order - 1.0) <= kLinearOrderBand;
  doc["dupin2"] = ordered{{"xi", vec(xi)},
                          {"eta", vec(frame[0])},
                          {"h", d2.h},
                          {"offset", d2.offset},
                          {"section_area", d2.section_area},
                          {"centroid_change", d2.centroid_change},
                          {"centroid_change_tenth", d2.centroid_change_tenth},
                          {"centroid_order", d2.centroid_order ? ordered(*d2.centroid_order)
                                                               : ordered(nullptr)},
                          {"offset_change", d2.offset_change},
                          {"offset_change_tenth", d2.offset_change_tenth},
                          {"offset_order", d2.offset_order ? ordered(*d2.offset_order)
                                                           : ordered(nullptr)},
                          {"predicted_offset_change", d2.predicted_offset_change},
                          {"pass", quadratic && linear}};

  ordered d3 = ordered::array();
  bool d3_pass = true;
  for (const auto& zp : frame) {
    try {
      const MetacenterEstimate m = metacentric_radius_fd(body, delta, xi, zp, c.cfg.h);
      d3_pass = d3_pass && m.rel_gap <= tol3;
      d3.push_back(ordered{{"xi", vec(m.xi)},
                           {"zeta", vec(m.zeta)},
                           {"zeta_prime", vec(m.zeta_prime)},
                           {"h", m.h},
                           {"R_fd", m.R_fd},
                           {"R_pred", m.R_pred},
                           {"rel_gap", m.rel_gap},
                           {"R_fd_2h", m.R_fd_2h}});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CurvatureUndefined) throw;
      d3_pass = false;
      d3.push_back(ordered{{"xi", vec(xi)}, {"zeta_prime", vec(zp)}, {"error", e.what()}});
    }
  }
  doc["dupin3"] = ordered{{"tolerance", tol3}, {"estimates", d3}, {"pass", d3_pass}};
  pass = d1.pass && quadratic && linear && d3_pass;

  if (c.d() == 2) {
    const DavidovReport dv = davidov_2d_check(body, delta, xi, c.cfg.h);
    const bool ok = dv.rel_gap <= tol3;
    doc["davidov"] = ordered{{"xi", vec(dv.xi)},
                             {"chord_length", dv.chord_length},
                             {"R_pred", dv.R_pred},
                             {"R_fd", dv.R_fd},
                             {"rel_gap", dv.rel_gap},
                             {"center_distance", dv.center_distance},
                             {"pass", ok}};
    pass = pass && ok;
  }
  doc["pass"] = pass;
  return doc;
}

int cmd_dupin(const Context& c, std::ostream& out) {
  bool pass = false;
  ordered doc{{"body", body_summary(c)}, {"flotation", density_block(c)}};
  doc["dupin"] = run_dupin(c, pass);
  Sink sink(c.cfg.out, out);
  sink.stream() << doc.dump(2) << "\n";
  return pass ? kExitPass : kExitFail;
}

// --- diagnose --------------------------------------------------------------

ordered run_diagnose(const Context& c, bool& pass) {
  const ConvexBody& body = c.run.body;
  const auto dirs = c.directions();
  const double tol_m = c.cfg.tol_test.value_or(default_test_tolerance(body));
  const double tol_c = c.cfg.tol_test.value_or(default_equichordal_tolerance(body));
  ordered doc;

  const MomentTestResult mt = principal_moment_test(body, c.run.delta, dirs, tol_m, c.jobs());
  doc["moment"] = ordered{{"pass", mt.pass},
                          {"c", mt.c},
                          {"target", mt.target},
                          {"implied_radius", mt.implied_radius},
                          {"max_diagonal_deviation", mt.max_diagonal_deviation},
                          {"max_off_diagonal", mt.max_off_diagonal},
                          {"tolerance", mt.tolerance}};

  const EquichordalResult eq = equichordal_test(
      body, c.run.delta, dirs, static_cast<std::size_t>(c.cfg.n_chords), tol_c, c.jobs());
  doc["equichordal"] = ordered{{"pass", eq.pass},
                               {"constant", eq.constant},
                               {"max_deviation", eq.max_deviation},
                               {"tolerance", eq.tolerance}};

  bool iso_ok = true;
  try {
    const IsotropyResult iso = isotropy_on_equators_test(body, dirs, tol_m);
    iso_ok = iso.pass;
    doc["isotropy"] = ordered{{"pass", iso.pass},
                              {"c", iso.c},
                              {"max_diagonal_deviation", iso.max_diagonal_deviation},
                              {"max_off_diagonal", iso.max_off_diagonal},
                              {"max_first_moment", iso.max_first_moment},
                              {"tolerance", iso.tolerance}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RequiresCentralSymmetry) throw;
    doc["isotropy"] = ordered{{"skipped", e.what()}};
  }

  bool limit_ok = true;
  if (c.cfg.limit_steps > 0) {
    std::vector<double> deltas;
    for (int k = 0; k < c.cfg.limit_steps; ++k) deltas.push_back(c.run.delta / std::pow(2.0, k));
    BallLimitOptions opt;
    opt.n_dirs = static_cast<std::size_t>(c.cfg.dirs);
    opt.tol_eq = c.tol_eq();
    opt.jobs = c.jobs();
    const BallLimitResult bl = ball_limit_test(body, deltas, opt);
    ordered steps = ordered::array();
    for (const auto& s : bl.steps) {
      steps.push_back(ordered{{"delta", s.delta},
                              {"verdict", verdict_name(s.verdict)},
                              {"max_residual_rad", s.max_residual},
                              {"fit_center", vec(s.fit_center)},
                              {"fit_radius", s.fit_radius},
                              {"fit_deviation", s.fit_deviation},
                              {"floating_distance", finite(s.floating_distance)},
                              {"ball_distance", s.ball_distance}});
    }
    limit_ok = bl.ball_certified;
    doc["ball_limit"] = ordered{{"floats", bl.floats},
                                {"ball_certified", bl.ball_certified},
                                {"steps", steps}};
  }

  if (!c.cfg.detail.empty()) {
    std::ofstream csv(c.cfg.detail);
    if (!csv) throw Error(ErrorCode::InvalidInput, "cannot write '" + c.cfg.detail + "'");
    csv << "dir_index";
    for (int k = 1; k <= c.d(); ++k) csv << ",xi_" << k;
    for (int k = 1; k < c.d(); ++k) csv << ",lambda_" << k;
    csv << ",off_diagonal,equichordal_min,equichordal_max\n";
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      csv << i;
      for (int k = 0; k < c.d(); ++k) csv << ',' << num(dirs[i][k]);
      for (Eigen::Index k = 0; k < mt.records[i].eigenvalues.size(); ++k)
        csv << ',' << num(mt.records[i].eigenvalues[k]);
      csv << ',' << num(mt.records[i].off_diagonal) << ',' << num(eq.records[i].min_sum) << ','
          << num(eq.records[i].max_sum) << '\n';
    }
  }

  pass = mt.pass && eq.pass && iso_ok && limit_ok;
  doc["pass"] = pass;
  return doc;
}

int cmd_diagnose(const Context& c, std::ostream& out) {
  bool pass = false;
  ordered doc{{"body", body_summary(c)}, {"flotation", density_block(c)}};
  doc["diagnostics"] = run_diagnose(c, pass);
  Sink sink(c.cfg.out, out);
  sink.stream() << doc.dump(2) << "\n";
  return pass ? kExitPass : kExitFail;
}

// --- floating-body -----------------------------------------------------------

int cmd_floating_body(const Context& c, std::ostream& out, std::ostream& err) {
  const FloatingBody fb = floating_body(c.run.body, c.run.delta, c.directions(), c.jobs());
  Sink sink(c.cfg.out, out);
  ordered summary{{"flotation", density_block(c)}, {"directions", fb.directions.size()}};
  if (fb.body) {
    sink.stream() << body_file_json(*fb.body);
    summary["empty"] = false;
    summary["volume"] = fb.body->volume();
    summary["vertices"] = fb.body->vertices().size();
    summary["dupin_gap"] = fb.dupin_gap;
    summary["hausdorff_to_body"] = hausdorff_distance(*fb.body, c.run.body);
  } else {
    sink.stream() << ordered{{"dimension", c.d()}, {"vertices", ordered::array()},
                             {"empty", true}}.dump(2)
                  << "\n";
    summary["empty"] = true;
  }
  err << summary.dump(2) << "\n";
  return kExitPass;
}

// --- report ----------------------------------------------------------------

int cmd_report(const Context& c, std::ostream& out) {
  ordered doc{{"body", body_summary(c)}, {"flotation", density_block(c)}};
  doc["waterline"] = record_json(buoyancy_center(c.run.body, c.xi(), c.run.delta, c.cfg.tol_vol));
  const ScanResult s = run_scan(c);
  doc["scan"] = scan_summary(c, s);
  bool dupin_pass = false, diag_pass = false;
  doc["dupin"] = run_dupin(c, dupin_pass);
  doc["diagnostics"] = run_diagnose(c, diag_pass);
  const bool pass = s.verdict == ScanVerdict::FloatsAllDirections && dupin_pass && diag_pass;
  doc["pass"] = pass;
  Sink sink(c.cfg.out, out);
  sink.stream() << doc.dump(2) << "\n";
  return pass ? kExitPass : kExitFail;
}

// --- generate --------------------------------------------------------------

int cmd_generate(const Context& c, std::ostream& out) {
  Sink sink(c.cfg.out, out);
  sink.stream() << body_file_json(c.run.body);
  return kExitPass;
}

std::string find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

void add_run_options(CLI::App& sub, RunConfig& cfg, std::string& config_path, bool& dump) {
  sub.add_option("--config", config_path, "JSON run configuration; flags override it");
  sub.add_flag("--dump-config", dump, "Print the effective configuration and exit");
  auto* body = sub.add_option("--body", cfg.body, "Body file (JSON)");
  auto* gen = sub.add_option("--generator", cfg.generator,
                             "Generator: ball, ellipsoid, box, cube, random_polytope, "
                             "revolution, zindler");
  body->excludes(gen);
  sub.add_option("--params", cfg.params, "Generator parameters as a JSON object");
  sub.add_option("--N", cfg.resolution, "Mesh resolution of the generator");
  auto* dens = sub.add_option("--density", cfg.density, "Relative density D in (0, 1)");
  auto* del = sub.add_option("--delta", cfg.delta, "Submerged volume");
  dens->excludes(del);
  sub.add_option("--dirs", cfg.dirs, "Number of grid directions");
  sub.add_option("--tol-vol", cfg.tol_vol, "Relative waterline volume tolerance");
  sub.add_option("--tol-eq", cfg.tol_eq, "Equilibrium residual tolerance (radians)");
  sub.add_option("--tol-test", cfg.tol_test, "Tolerance of the characterization tests");
  sub.add_option("--h", cfg.h, "Finite-difference step (radians)");
  sub.add_option("--xi", cfg.xi, "Direction, d numbers (default: last axis)")->delimiter(',');
  sub.add_option("--chords", cfg.n_chords, "Chords per section in the equichordal test");
  sub.add_option("--limit-steps", cfg.limit_steps,
                 "Densities delta / 2^k, k < steps, for the ball-limit test");
  sub.add_option("--out", cfg.out, "Output file (default: standard output)");
  sub.add_option("--detail", cfg.detail, "Per-direction CSV of the diagnostics");
  sub.add_option("--jobs", cfg.jobs, "Worker threads");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg;
    const std::string preset = find_config_path(argc, argv);
    if (!preset.empty()) {
      std::ifstream in(preset);
      if (!in) throw Error(ErrorCode::InvalidInput, "cannot open config '" + preset + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      cfg = config_from_json(buf.str(), preset);
    }

    CLI::App app{"Hydrostatics of convex bodies: waterlines, buoyancy centers, "
                 "Dupin checks and ball characterizations",
                 "buoyancy-lab"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    std::string config_path;
    bool dump = false;
    struct Command {
      const char* name;
      const char* help;
      std::function<int(const Context&)> fn;
    };
    const std::vector<Command> commands = {
        {"waterline", "Waterline and buoyancy center for one direction (JSON)",
         [&](const Context& c) { return cmd_waterline(c, out); }},
        {"scan", "Equilibrium residual scan (CSV; verdict on stderr)",
         [&](const Context& c) { return cmd_scan(c, out, err); }},
        {"dupin", "Dupin theorem checks at one direction (JSON)",
         [&](const Context& c) { return cmd_dupin(c, out); }},
        {"diagnose", "Moment, equichordal, isotropy and ball-limit tests (JSON)",
         [&](const Context& c) { return cmd_diagnose(c, out); }},
        {"floating-body", "Convex floating body as a body file",
         [&](const Context& c) { return cmd_floating_body(c, out, err); }},
        {"report", "All checks in one JSON document",
         [&](const Context& c) { return cmd_report(c, out); }},
        {"generate", "Write a generated body as a body file",
         [&](const Context& c) { return cmd_generate(c, out); }},
    };
    std::vector<CLI::App*> subs;
    for (const auto& cmd : commands) {
      CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
      add_run_options(*sub, cfg, config_path, dump);
      subs.push_back(sub);
    }

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitPass;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }

    if (dump) {
      out << config_to_json(cfg);
      return kExitPass;
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      const Context ctx{cfg, resolve(cfg)};
      return commands[i].fn(ctx);
    }
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace buoyancy::cli
