#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mase/evolution.hpp"
#include "mase/grid.hpp"

namespace mase::app {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class InitialKind { Zero, Gaussian, Mode, TwProfile, File };

struct InitialCondition {
  InitialKind kind = InitialKind::Zero;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  int wavenumber = 1;  // mode index m: amplitude * cos(2 pi m x / L)
  double speed = 0.0;  // tw_profile
  std::string path;    // file, relative to the config's directory
};

struct Analysis {
  bool symmetry = false;
  bool breaking = true;
  bool weakform = false;
  double symmetry_tol = 1e-6;
  double travel_tol = 1e-3;
  std::uint64_t seed = 1;
  int test_functions = 8;
};

struct Scenario {
  int n_points = 512;
  double length = 40.0;
  InitialCondition initial;
  SolverConfig solver;
  Analysis analysis;
};

/// Parses and validates; throws Error(Config) naming the offending key.
Scenario parse_scenario(const json& j);

/// Applies "dotted.key=value" assignments; the value is parsed as JSON when
/// possible and kept as a string otherwise.
json apply_overrides(json config, const std::vector<std::string>& assignments);

Field initial_field(const Scenario& s, const fs::path& base_dir);

struct RunOptions {
  bool timing = false;  // record wall-clock seconds in the manifest
  fs::path base_dir;    // resolves relative paths in the scenario
};

/// Writes snapshots, diagnostics.csv, optional analysis JSON and
/// manifest.json into `out` and returns the manifest.
json cmd_simulate(const json& scenario, const fs::path& out, const RunOptions& options = {});

/// Profile CSV + JSON sidecar for {"speed", ["integration_constant",
/// "energy", "near"], "sampling": {...}}; solitary when A and E are absent.
json cmd_tw(const json& config, const fs::path& out, const RunOptions& options = {});

json cmd_symmetry(const fs::path& run_dir, double symmetry_tol, double travel_tol, const fs::path& out_file);

/// Residuals over a seeded bump family: unsteady for a run directory,
/// steady for a tw output directory.
json cmd_weakform(const fs::path& dir, std::uint64_t seed, int count, const fs::path& out_file);

/// {"command": "simulate"|"tw", "base": {...}, "parameter": "dotted.key",
///  "values": [...] | "range": {"start", "stop", "count"}}
json cmd_sweep(const json& sweep, const fs::path& out, int workers, const RunOptions& options = {});

struct LoadedRun {
  json manifest;
  Scenario scenario;
  Trajectory trajectory;
};

/// Reads a simulate run directory, verifying every digest in the manifest.
LoadedRun load_run(const fs::path& run_dir);

/// Throws Error(Io) on the first missing file or digest mismatch.
void verify_manifest(const fs::path& dir);

/// $MASE_OUT_ROOT (or ./mase-out) / <command>-<first 12 hex of the config digest>.
fs::path default_output_dir(const std::string& command, const json& config);

}  // namespace mase::app
