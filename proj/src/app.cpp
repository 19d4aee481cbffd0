#include "mase/app.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "mase/error.hpp"
#include "mase/io.hpp"
#include "mase/symmetry.hpp"
#include "mase/traveling_wave.hpp"
#include "mase/weakform.hpp"

namespace mase::app {

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::Config, where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorKind::Config, "unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorKind::Config, "missing '" + std::string(key) + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::Config, "'" + std::string(key) + "' in " + where + " has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

void require_config(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Config, what);
}

json::json_pointer pointer(const std::string& dotted) {
  std::string p = "/" + dotted;
  for (char& ch : p) {
    if (ch == '.') ch = '/';
  }
  return json::json_pointer(p);
}

json inventory(const fs::path& dir, const std::vector<std::string>& names) {
  json files = json::array();
  for (const std::string& name : names) {
    const fs::path p = dir / name;
    files.push_back({{"path", name}, {"bytes", fs::file_size(p)}, {"sha256", io::sha256_file(p)}});
  }
  return files;
}

void prepare_dir(const fs::path& out) {
  if (fs::exists(out) && !fs::is_directory(out)) {
    throw Error(ErrorKind::Io, "'" + out.string() + "' exists and is not a directory");
  }
  if (fs::exists(out / "manifest.json")) {
    throw Error(ErrorKind::Io, "'" + out.string() + "' already holds a run; choose another --out");
  }
  fs::create_directories(out);
}

json error_json(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return {{"error", std::string(to_string(err->kind()))}, {"message", err->detail()}};
  }
  return {{"error", "internal"}, {"message", e.what()}};
}

}  // namespace

Scenario parse_scenario(const json& j) {
  reject_unknown(j, {"grid", "initial_condition", "solver", "analysis"}, "scenario");
  Scenario s;

  const json grid = get_or<json>(j, "grid", json::object(), "scenario");
  reject_unknown(grid, {"n_points", "length"}, "grid");
  s.n_points = get_or<int>(grid, "n_points", s.n_points, "grid");
  s.length = get_or<double>(grid, "length", s.length, "grid");
  require_config(s.n_points >= 16 && s.n_points % 2 == 0, "grid.n_points must be even and >= 16");
  require_config(std::isfinite(s.length) && s.length > 0.0, "grid.length must be positive");

  const json ic = get<json>(j, "initial_condition", "scenario");
  const std::string kind = get<std::string>(ic, "kind", "initial_condition");
  InitialCondition& init = s.initial;
  if (kind == "zero") {
    reject_unknown(ic, {"kind"}, "initial_condition");
    init.kind = InitialKind::Zero;
  } else if (kind == "gaussian") {
    reject_unknown(ic, {"kind", "amplitude", "center", "width"}, "initial_condition");
    init.kind = InitialKind::Gaussian;
    init.amplitude = get<double>(ic, "amplitude", "initial_condition");
    init.center = get_or<double>(ic, "center", 0.5 * s.length, "initial_condition");
    init.width = get<double>(ic, "width", "initial_condition");
    require_config(std::isfinite(init.amplitude), "initial_condition.amplitude must be finite");
    require_config(init.center >= 0.0 && init.center < s.length, "initial_condition.center must lie in [0, length)");
    require_config(init.width > 0.0 && init.width <= 0.25 * s.length,
                   "initial_condition.width must lie in (0, length / 4]");
  } else if (kind == "mode") {
    reject_unknown(ic, {"kind", "amplitude", "wavenumber"}, "initial_condition");
    init.kind = InitialKind::Mode;
    init.amplitude = get<double>(ic, "amplitude", "initial_condition");
    init.wavenumber = get<int>(ic, "wavenumber", "initial_condition");
    require_config(std::isfinite(init.amplitude), "initial_condition.amplitude must be finite");
    require_config(init.wavenumber >= 1 && 3 * init.wavenumber <= s.n_points,
                   "initial_condition.wavenumber must lie in [1, n_points / 3]");
  } else if (kind == "tw_profile") {
    reject_unknown(ic, {"kind", "speed"}, "initial_condition");
    init.kind = InitialKind::TwProfile;
    init.speed = get<double>(ic, "speed", "initial_condition");
    require_config(std::isfinite(init.speed), "initial_condition.speed must be finite");
  } else if (kind == "file") {
    reject_unknown(ic, {"kind", "path"}, "initial_condition");
    init.kind = InitialKind::File;
    init.path = get<std::string>(ic, "path", "initial_condition");
    require_config(!init.path.empty(), "initial_condition.path must not be empty");
  } else {
    throw Error(ErrorKind::Config, "unknown initial_condition.kind '" + kind + "'");
  }

  const json solver = get_or<json>(j, "solver", json::object(), "scenario");
  reject_unknown(solver, {"cfl", "dt_max", "dt_min", "t_end", "snapshot_interval", "breaking_slope_threshold"},
                 "solver");
  try {
    s.solver = io::solver_config_from_json(solver);
  } catch (const json::exception&) {
    throw Error(ErrorKind::Config, "solver settings must be numbers");
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.detail());
  }

  const json an = get_or<json>(j, "analysis", json::object(), "scenario");
  reject_unknown(an, {"symmetry", "breaking", "weakform", "symmetry_tol", "travel_tol", "seed", "test_functions"},
                 "analysis");
  Analysis& a = s.analysis;
  a.symmetry = get_or<bool>(an, "symmetry", a.symmetry, "analysis");
  a.breaking = get_or<bool>(an, "breaking", a.breaking, "analysis");
  a.weakform = get_or<bool>(an, "weakform", a.weakform, "analysis");
  a.symmetry_tol = get_or<double>(an, "symmetry_tol", a.symmetry_tol, "analysis");
  a.travel_tol = get_or<double>(an, "travel_tol", a.travel_tol, "analysis");
  a.seed = get_or<std::uint64_t>(an, "seed", a.seed, "analysis");
  a.test_functions = get_or<int>(an, "test_functions", a.test_functions, "analysis");
  require_config(a.symmetry_tol > 0.0 && a.travel_tol > 0.0, "analysis tolerances must be positive");
  require_config(a.test_functions >= 1, "analysis.test_functions must be >= 1");
  return s;
}

json apply_overrides(json config, const std::vector<std::string>& assignments) {
  for (const std::string& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::Config, "override '" + a + "' is not key=value");
    const std::string key = a.substr(0, eq);
    const std::string text = a.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    config[pointer(key)] = value;
  }
  return config;
}

Field initial_field(const Scenario& s, const fs::path& base_dir) {
  const Grid grid(s.n_points, s.length);
  const InitialCondition& ic = s.initial;
  switch (ic.kind) {
    case InitialKind::Zero:
      return Field::zeros(grid);
    case InitialKind::Gaussian:
      return Field::sample(grid, [&](double x) {
        double d = x - ic.center;
        d -= s.length * std::round(d / s.length);
        return ic.amplitude * std::exp(-(d * d) / (ic.width * ic.width));
      });
    case InitialKind::Mode:
      return Field::sample(grid, [&](double x) {
        return ic.amplitude * std::cos(2.0 * std::numbers::pi * ic.wavenumber * x / s.length);
      });
    case InitialKind::TwProfile: {
      const TWProfile p = solitary_profile(ic.speed, {grid.spacing(), grid.n_points()});
      return Field(grid, p.values);
    }
    case InitialKind::File: {
      const fs::path p = fs::path(ic.path).is_absolute() ? fs::path(ic.path) : base_dir / ic.path;
      if (!fs::exists(p)) throw Error(ErrorKind::Config, "initial_condition.path '" + p.string() + "' does not exist");
      Field u = io::read_field_csv(p, s.length);
      if (static_cast<int>(u.size()) != s.n_points) {
        throw Error(ErrorKind::Config, "initial condition file has " + std::to_string(u.size()) +
                                           " points, grid.n_points is " + std::to_string(s.n_points));
      }
      return u;
    }
  }
  throw Error(ErrorKind::Config, "unhandled initial condition");
}

json cmd_simulate(const json& config, const fs::path& out, const RunOptions& options) {
  const Scenario s = parse_scenario(config);
  const Field u0 = initial_field(s, options.base_dir);
  prepare_dir(out);

  const auto start = std::chrono::steady_clock::now();
  const Trajectory traj = evolve(State(0.0, u0), s.solver);

  std::vector<std::string> written;
  json snapshots = json::array();
  std::string diag = "t,mean,sup,max_slope\n";
  for (const State& snap : traj.snapshots) {
    const std::string name = io::snapshot_name(snap.time);
    io::write_field_csv(out / name, snap.u);
    written.push_back(name);
    snapshots.push_back({{"t", snap.time}, {"file", name}});
    diag += io::format_number(snap.time) + ',' + io::format_number(snap.u.mean()) + ',' +
            io::format_number(snap.u.max_abs()) + ',' + io::format_number(max_slope(snap.u)) + '\n';
  }
  io::write_text(out / "diagnostics.csv", diag);
  written.push_back("diagnostics.csv");

  if (s.analysis.breaking || traj.termination == Termination::BreakingDetected) {
    io::write_text(out / "breaking.json", io::dump(io::to_json(detect_breaking(traj))));
    written.push_back("breaking.json");
  }
  if (s.analysis.symmetry) {
    json rep;
    try {
      rep = io::to_json(verify_theorem(traj, s.analysis.symmetry_tol, s.analysis.travel_tol));
    } catch (const std::exception& e) {
      rep = error_json(e);
    }
    io::write_text(out / "symmetry.json", io::dump(rep));
    written.push_back("symmetry.json");
  }
  if (s.analysis.weakform) {
    json rep;
    try {
      const double t0 = traj.snapshots.front().time;
      const double t1 = traj.snapshots.back().time;
      const TestFunction rho{0.5 * (t0 + t1), 0.45 * (t1 - t0), TestFunctionKind::PolynomialBump};
      const auto tests = random_test_functions(s.analysis.seed, s.analysis.test_functions, 0.0, s.length,
                                               s.length / 20.0, s.length / 8.0);
      rep = io::to_json(unsteady_residual_batch(traj, tests, rho));
      rep["seed"] = s.analysis.seed;
    } catch (const std::exception& e) {
      rep = error_json(e);
    }
    io::write_text(out / "weakform.json", io::dump(rep));
    written.push_back("weakform.json");
  }

  json manifest = {{"tool", "mase"},
                   {"tool_version", kToolVersion},
                   {"command", "simulate"},
                   {"scenario", config},
                   {"termination", std::string(to_string(traj.termination))},
                   {"final_time", traj.snapshots.back().time},
                   {"snapshots", snapshots},
                   {"files", inventory(out, written)}};
  if (options.timing) {
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  io::write_text(out / "manifest.json", io::dump(manifest));
  return manifest;
}

namespace {

struct TwRequest {
  TWParams params;
  bool solitary = true;
  std::optional<double> near;
  SolitarySampling solitary_sampling;
  PeriodicSampling periodic_sampling{256, 0.5, 1};
};

TwRequest parse_tw(const json& j) {
  reject_unknown(j, {"speed", "integration_constant", "energy", "near", "sampling"}, "tw config");
  TwRequest r;
  r.params.speed = get<double>(j, "speed", "tw config");
  const bool has_a = j.contains("integration_constant");
  const bool has_e = j.contains("energy");
  require_config(!has_a || has_e, "tw config: 'integration_constant' needs 'energy'");
  r.solitary = !has_e;
  r.params.integration_constant = get_or<double>(j, "integration_constant", 0.0, "tw config");
  r.params.energy = get_or<double>(j, "energy", 0.0, "tw config");
  if (j.contains("near")) r.near = get<double>(j, "near", "tw config");
  require_config(std::isfinite(r.params.speed) && std::isfinite(r.params.integration_constant) &&
                     std::isfinite(r.params.energy),
                 "tw parameters must be finite");
  const json sampling = get_or<json>(j, "sampling", json::object(), "tw config");
  if (r.solitary) {
    reject_unknown(sampling, {"spacing", "n_points"}, "tw sampling");
    r.solitary_sampling.spacing = get_or<double>(sampling, "spacing", 0.1, "tw sampling");
    r.solitary_sampling.n_points = get_or<int>(sampling, "n_points", 1024, "tw sampling");
    require_config(r.solitary_sampling.spacing > 0.0 && r.solitary_sampling.n_points >= 16,
                   "tw sampling: spacing > 0 and n_points >= 16 required");
  } else {
    reject_unknown(sampling, {"points_per_period", "periods", "offset"}, "tw sampling");
    r.periodic_sampling.points_per_period = get_or<int>(sampling, "points_per_period", 256, "tw sampling");
    r.periodic_sampling.periods = get_or<int>(sampling, "periods", 1, "tw sampling");
    r.periodic_sampling.offset = get_or<double>(sampling, "offset", 0.5, "tw sampling");
    require_config(r.periodic_sampling.points_per_period >= 16 && r.periodic_sampling.periods >= 1,
                   "tw sampling: points_per_period >= 16 and periods >= 1 required");
  }
  return r;
}

TWProfile build_profile(const TwRequest& r) {
  if (r.solitary) return solitary_profile(r.params.speed, r.solitary_sampling);
  return periodic_profile(r.params, r.periodic_sampling, r.near);
}

std::vector<TestFunction> certification_bumps(const TWProfile& p) {
  const double h = p.spacing();
  const double lo = p.window_start;
  const double len = p.window_length();
  std::vector<TestFunction> out;
  if (p.period) {
    const double w = len / 4.0;
    for (double f : {0.25, 0.5, 0.75}) out.push_back({lo + f * len, w, TestFunctionKind::PolynomialBump});
  } else {
    const double w = std::max(32.0 * h, std::min(4.0, len / 8.0));
    for (int k = -2; k <= 2; ++k) {
      const TestFunction t{0.5 * k * w, w, TestFunctionKind::PolynomialBump};
      if (t.support_lo() >= lo && t.support_hi() <= lo + len) out.push_back(t);
    }
  }
  std::erase_if(out, [h](const TestFunction& t) { return h > t.width / 32.0; });
  return out;
}

}  // namespace

json cmd_tw(const json& config, const fs::path& out, const RunOptions&) {
  const TwRequest req = parse_tw(config);
  const TWProfile profile = build_profile(req);
  prepare_dir(out);

  json extra;
  extra["config"] = config;
  json tps = json::array();
  for (const TurningPoint& tp : turning_points(profile.params)) {
    tps.push_back({{"value", tp.value}, {"tangency", tp.tangency}});
  }
  extra["turning_points"] = tps;
  extra["singular_line"] = singular_line(profile.params);
  double lo = profile.values.front(), hi = profile.values.front();
  for (double v : profile.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  extra["min_U"] = lo;
  extra["max_U"] = hi;
  try {
    const auto bumps = certification_bumps(profile);
    if (bumps.empty()) throw Error(ErrorKind::Support, "no certification bump fits the sampled window");
    extra["steady_residual"] = io::to_json(steady_residual_batch(profile, bumps));
  } catch (const std::exception& e) {
    extra["steady_residual"] = error_json(e);
  }
  io::write_profile(out / "profile.csv", out / "profile.json", profile, extra);

  json manifest = {{"tool", "mase"},
                   {"tool_version", kToolVersion},
                   {"command", "tw"},
                   {"config", config},
                   {"regularity", std::string(to_string(profile.regularity))},
                   {"files", inventory(out, {"profile.csv", "profile.json"})}};
  io::write_text(out / "manifest.json", io::dump(manifest));
  return json::parse(io::read_text(out / "profile.json"));
}

void verify_manifest(const fs::path& dir) {
  const json manifest = json::parse(io::read_text(dir / "manifest.json"), nullptr, false);
  if (manifest.is_discarded()) throw Error(ErrorKind::Io, "manifest.json in '" + dir.string() + "' is not JSON");
  for (const json& f : manifest.at("files")) {
    const fs::path p = dir / f.at("path").get<std::string>();
    if (!fs::exists(p)) throw Error(ErrorKind::Io, "manifest lists missing file '" + p.string() + "'");
    if (io::sha256_file(p) != f.at("sha256").get<std::string>()) {
      throw Error(ErrorKind::Io, "digest mismatch for '" + p.string() + "'");
    }
  }
}

LoadedRun load_run(const fs::path& run_dir) {
  verify_manifest(run_dir);
  LoadedRun run;
  run.manifest = json::parse(io::read_text(run_dir / "manifest.json"));
  if (run.manifest.value("command", std::string()) != "simulate") {
    throw Error(ErrorKind::Io, "'" + run_dir.string() + "' is not a simulate run directory");
  }
  run.scenario = parse_scenario(run.manifest.at("scenario"));
  run.trajectory.config = run.scenario.solver;
  run.trajectory.termination = termination_from_string(run.manifest.at("termination").get<std::string>());
  for (const json& s : run.manifest.at("snapshots")) {
    run.trajectory.snapshots.emplace_back(
        s.at("t").get<double>(), io::read_field_csv(run_dir / s.at("file").get<std::string>(), run.scenario.length));
  }
  return run;
}

json cmd_symmetry(const fs::path& run_dir, double symmetry_tol, double travel_tol, const fs::path& out_file) {
  const LoadedRun run = load_run(run_dir);
  json rep = io::to_json(verify_theorem(run.trajectory, symmetry_tol, travel_tol));
  rep["symmetry_tol"] = symmetry_tol;
  rep["travel_tol"] = travel_tol;
  if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
  io::write_text(out_file, io::dump(rep));
  return rep;
}

json cmd_weakform(const fs::path& dir, std::uint64_t seed, int count, const fs::path& out_file) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "test-function count must be >= 1");
  verify_manifest(dir);
  const json manifest = json::parse(io::read_text(dir / "manifest.json"));
  const std::string command = manifest.value("command", std::string());
  json rep;
  if (command == "simulate") {
    const LoadedRun run = load_run(dir);
    const auto& snaps = run.trajectory.snapshots;
    const double t0 = snaps.front().time;
    const double t1 = snaps.back().time;
    const TestFunction rho{0.5 * (t0 + t1), 0.45 * (t1 - t0), TestFunctionKind::PolynomialBump};
    const double len = run.scenario.length;
    const auto tests = random_test_functions(seed, count, 0.0, len, len / 20.0, len / 8.0);
    rep = io::to_json(unsteady_residual_batch(run.trajectory, tests, rho));
    rep["mode"] = "unsteady";
  } else if (command == "tw") {
    const TWProfile profile = build_profile(parse_tw(manifest.at("config")));
    const double h = profile.spacing();
    const double len = profile.window_length();
    const double min_w = std::max(32.0 * h, len / 32.0);
    const double max_w = std::max(min_w, len / 8.0);
    const auto tests = random_test_functions(seed, count, profile.window_start, profile.window_start + len, min_w, max_w);
    rep = io::to_json(steady_residual_batch(profile, tests));
    rep["mode"] = "steady";
  } else {
    throw Error(ErrorKind::Io, "'" + dir.string() + "' is neither a simulate nor a tw output directory");
  }
  rep["seed"] = seed;
  if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
  io::write_text(out_file, io::dump(rep));
  return rep;
}

namespace {

std::string csv_safe(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
  }
  return s;
}

struct PointResult {
  std::string status = "ok";
  std::string message;
  std::string row;  // trailing aggregate columns
};

PointResult run_point(const std::string& command, const json& config, const fs::path& dir, const RunOptions& options) {
  PointResult r;
  try {
    if (command == "simulate") {
      const json m = cmd_simulate(config, dir, options);
      const LoadedRun run = load_run(dir);
      const Field& first = run.trajectory.snapshots.front().u;
      const Field& last = run.trajectory.snapshots.back().u;
      r.row = m.at("termination").get<std::string>() + ',' + io::format_number(m.at("final_time").get<double>()) +
              ',' + io::format_number(last.max_abs()) + ',' + io::format_number(max_slope(last)) + ',' +
              io::format_number(last.mean() - first.mean());
    } else {
      const json p = cmd_tw(config, dir, options);
      const json& res = p.at("steady_residual");
      r.row = p.at("regularity").get<std::string>() + ',' +
              (p.at("period").is_null() ? std::string() : io::format_number(p.at("period").get<double>())) + ',' +
              io::format_number(p.at("max_U").get<double>() - p.at("min_U").get<double>()) + ',' +
              (res.contains("max_abs_residual") ? io::format_number(res.at("max_abs_residual").get<double>())
                                                : std::string());
    }
  } catch (const std::exception& e) {
    const json err = error_json(e);
    r.status = "error:" + err.at("error").get<std::string>();
    r.message = err.at("message").get<std::string>();
    r.row = command == "simulate" ? ",,,," : ",,,";
  }
  return r;
}

}  // namespace

json cmd_sweep(const json& sweep, const fs::path& out, int workers, const RunOptions& options) {
  reject_unknown(sweep, {"command", "base", "parameter", "values", "range"}, "sweep");
  const std::string command = get<std::string>(sweep, "command", "sweep");
  require_config(command == "simulate" || command == "tw", "sweep.command must be 'simulate' or 'tw'");
  const json base = get<json>(sweep, "base", "sweep");
  const std::string parameter = get<std::string>(sweep, "parameter", "sweep");
  require_config(workers >= 1, "worker count must be >= 1");

  std::vector<double> values;
  if (sweep.contains("values")) {
    require_config(!sweep.contains("range"), "sweep: give either 'values' or 'range'");
    values = get<std::vector<double>>(sweep, "values", "sweep");
  } else {
    const json range = get<json>(sweep, "range", "sweep");
    reject_unknown(range, {"start", "stop", "count"}, "sweep.range");
    const double a = get<double>(range, "start", "sweep.range");
    const double b = get<double>(range, "stop", "sweep.range");
    const int n = get<int>(range, "count", "sweep.range");
    require_config(n >= 1, "sweep.range.count must be >= 1");
    for (int i = 0; i < n; ++i) values.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  }
  require_config(!values.empty(), "sweep has no points");
  for (double v : values) require_config(std::isfinite(v), "sweep values must be finite");

  std::vector<json> configs;
  for (double v : values) {
    json c = base;
    try {
      const auto ptr = pointer(parameter);
      // Keep integer-valued keys integral so a one-point sweep reproduces a
      // plain run byte for byte.
      if (c.contains(ptr) && c[ptr].is_number_integer()) {
        require_config(v == std::round(v), "sweep value for integer key '" + parameter + "' must be integral");
        c[ptr] = static_cast<std::int64_t>(v);
      } else {
        c[ptr] = v;
      }
    } catch (const json::exception&) {
      throw Error(ErrorKind::Config, "sweep.parameter '" + parameter + "' is not a valid key path");
    }
    configs.push_back(std::move(c));
  }

  if (fs::exists(out / "sweep.json")) {
    throw Error(ErrorKind::Io, "'" + out.string() + "' already holds a sweep; choose another --out");
  }
  fs::create_directories(out);
  auto point_name = [](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "point_%04zu", i);
    return std::string(buf);
  };

  std::vector<PointResult> results(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      results[i] = run_point(command, configs[i], out / point_name(i), options);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(workers, static_cast<int>(values.size()));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::string csv = command == "simulate" ? "point,value,status,termination,final_time,sup,max_slope,mean_drift\n"
                                          : "point,value,status,regularity,period,wave_height,steady_residual\n";
  json points = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    csv += point_name(i) + ',' + io::format_number(values[i]) + ',' + results[i].status + ',' + results[i].row + '\n';
    json p = {{"dir", point_name(i)}, {"value", values[i]}, {"status", results[i].status}};
    if (!results[i].message.empty()) p["message"] = csv_safe(results[i].message);
    points.push_back(p);
  }
  io::write_text(out / "aggregate.csv", csv);
  const json manifest = {{"tool", "mase"},
                         {"tool_version", kToolVersion},
                         {"command", "sweep"},
                         {"sweep", sweep},
                         {"points", points},
                         {"files", inventory(out, {"aggregate.csv"})}};
  io::write_text(out / "sweep.json", io::dump(manifest));
  return manifest;
}

fs::path default_output_dir(const std::string& command, const json& config) {
  const char* root = std::getenv("MASE_OUT_ROOT");
  const fs::path base = (root && *root) ? fs::path(root) : fs::path("mase-out");
  return base / (command + "-" + io::sha256_bytes(config.dump()).substr(0, 12));
}

}  // namespace mase::app
