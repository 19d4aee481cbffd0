#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mase/evolution.hpp"
#include "mase/symmetry.hpp"
#include "mase/traveling_wave.hpp"
#include "mase/weakform.hpp"

namespace mase::io {

namespace fs = std::filesystem;
using nlohmann::json;

/// "%.12g": the number format of every CSV cell.
std::string format_number(double x);

/// Snapshot file name "t=<time>.csv".
std::string snapshot_name(double time);

void write_text(const fs::path& path, std::string_view content);
std::string read_text(const fs::path& path);

/// Lowercase hex SHA-256 of the file's bytes.
std::string sha256_file(const fs::path& path);
std::string sha256_bytes(std::string_view bytes);

/// Pretty-printed, two-space indent, trailing newline.
std::string dump(const json& j);

void write_field_csv(const fs::path& path, const Field& u);
/// Reads an x,u CSV back onto a grid of the given period.
Field read_field_csv(const fs::path& path, double length);

void write_profile(const fs::path& csv_path, const fs::path& json_path, const TWProfile& profile, const json& extra);

json to_json(const TestFunction& t);
TestFunction test_function_from_json(const json& j);
json to_json(const SolverConfig& c);
SolverConfig solver_config_from_json(const json& j, SolverConfig base = {});
json to_json(const SymmetryReport& r);
json to_json(const ResidualReport& r);
json to_json(const BreakingReport& r);

}  // namespace mase::io
