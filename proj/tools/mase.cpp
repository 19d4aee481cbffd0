#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mase/app.hpp"
#include "mase/error.hpp"
#include "mase/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mase;

namespace {

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  const json j = json::parse(io::read_text(path), nullptr, false, true);
  if (j.is_discarded()) throw Error(ErrorKind::Config, "'" + path + "' is not valid JSON");
  return j;
}

fs::path base_dir_of(const std::string& config_path) {
  return config_path.empty() ? fs::current_path() : fs::absolute(config_path).parent_path();
}

// One machine-parsable line on stderr.
int fail(const std::string& kind, const std::string& message) {
  json line = {{"error", kind}, {"message", message}};
  std::cerr << line.dump() << "\n";
  return (kind == "config_error" || kind == "invalid_argument") ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"mase: moderate-amplitude shallow-water solver and traveling-wave toolkit"};
  cli.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  bool timing = false;
  std::vector<std::string> overrides;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out, "output directory (default: $MASE_OUT_ROOT/<command>-<digest>)");
    sub->add_option("--seed", seed, "seed for randomized test-function families");
    sub->add_option("--workers", workers, "concurrent sweep workers")->check(CLI::PositiveNumber);
    sub->add_option("--set", overrides, "override a config entry, key.path=value (repeatable)");
    sub->add_flag("--timing", timing, "record wall-clock time in the manifest");
  };

  CLI::App* simulate = cli.add_subcommand("simulate", "evolve a scenario and write a run directory");
  common(simulate);

  CLI::App* tw = cli.add_subcommand("tw", "construct a traveling-wave profile");
  common(tw);
  std::optional<double> speed, constant, energy;
  tw->add_option("--speed", speed, "wave speed c");
  tw->add_option("--integration-constant", constant, "integration constant A");
  tw->add_option("--energy", energy, "first-integral level E");

  CLI::App* symmetry = cli.add_subcommand("symmetry", "verify the symmetry theorem on a run directory");
  common(symmetry);
  std::string run_dir;
  double symmetry_tol = 1e-6, travel_tol = 1e-3;
  symmetry->add_option("--run", run_dir, "simulate run directory")->required();
  symmetry->add_option("--symmetry-tol", symmetry_tol, "per-snapshot asymmetry tolerance");
  symmetry->add_option("--travel-tol", travel_tol, "rigid-translation tolerance");

  CLI::App* weakform = cli.add_subcommand("weakform", "weak-form residuals of a run or tw directory");
  common(weakform);
  std::string input_dir;
  int count = 16;
  weakform->add_option("--input", input_dir, "simulate run or tw output directory")->required();
  weakform->add_option("--count", count, "number of random test functions")->check(CLI::PositiveNumber);

  CLI::App* sweep = cli.add_subcommand("sweep", "run a parameter sweep");
  common(sweep);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return cli.exit(e);
    return fail("config_error", e.what());
  }

  try {
    app::RunOptions options;
    options.timing = timing;
    options.base_dir = base_dir_of(config_path);
    json config = app::apply_overrides(load_config(config_path), overrides);

    if (simulate->parsed()) {
      if (seed) config["analysis"]["seed"] = *seed;
      const fs::path dir = out.empty() ? app::default_output_dir("simulate", config) : fs::path(out);
      const json m = app::cmd_simulate(config, dir, options);
      std::cout << dir.string() << " " << m.at("termination").get<std::string>() << "\n";
    } else if (tw->parsed()) {
      if (speed) config["speed"] = *speed;
      if (constant) config["integration_constant"] = *constant;
      if (energy) config["energy"] = *energy;
      const fs::path dir = out.empty() ? app::default_output_dir("tw", config) : fs::path(out);
      const json p = app::cmd_tw(config, dir, options);
      std::cout << dir.string() << " " << p.at("regularity").get<std::string>() << "\n";
    } else if (symmetry->parsed()) {
      const fs::path file = out.empty() ? fs::path(run_dir) / "symmetry_report.json" : fs::path(out) / "symmetry_report.json";
      const json r = app::cmd_symmetry(run_dir, symmetry_tol, travel_tol, file);
      std::cout << file.string() << " " << r.at("verdict").get<std::string>() << "\n";
    } else if (weakform->parsed()) {
      const fs::path file = out.empty() ? fs::path(input_dir) / "weakform_report.json" : fs::path(out) / "weakform_report.json";
      const json r = app::cmd_weakform(input_dir, seed.value_or(1), count, file);
      std::cout << file.string() << " " << io::format_number(r.at("max_abs_residual").get<double>()) << "\n";
    } else if (sweep->parsed()) {
      const fs::path dir = out.empty() ? app::default_output_dir("sweep", config) : fs::path(out);
      app::cmd_sweep(config, dir, workers, options);
      std::cout << (dir / "aggregate.csv").string() << "\n";
    }
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())), e.detail());
  } catch (const json::exception& e) {
    return fail("config_error", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
