#include "mase/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "mase/error.hpp"

namespace mase::io {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::string snapshot_name(double time) { return "t=" + format_number(time) + ".csv"; }

void write_text(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_bytes(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorKind::Io, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_bytes(read_text(path)); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_field_csv(const fs::path& path, const Field& u) {
  std::string out = "x,u\n";
  out.reserve(32 * u.size());
  for (int j = 0; j < u.grid().n_points(); ++j) {
    out += format_number(u.grid().x(j));
    out += ',';
    out += format_number(u[j]);
    out += '\n';
  }
  write_text(path, out);
}

namespace {

std::vector<std::vector<double>> read_csv(const fs::path& path, std::string_view header) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorKind::Io, "'" + path.string() + "' does not start with header '" + std::string(header) + "'");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Io, "bad number '" + cell + "' in '" + path.string() + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Field read_field_csv(const fs::path& path, double length) {
  const auto rows = read_csv(path, "x,u");
  std::vector<double> u;
  for (const auto& r : rows) {
    if (r.size() != 2) throw Error(ErrorKind::Io, "expected 2 columns in '" + path.string() + "'");
    u.push_back(r[1]);
  }
  const Grid grid(static_cast<int>(u.size()), length);
  return Field(grid, std::move(u));
}

void write_profile(const fs::path& csv_path, const fs::path& json_path, const TWProfile& profile, const json& extra) {
  std::string out = "xi,U\n";
  for (std::size_t j = 0; j < profile.values.size(); ++j) {
    out += format_number(profile.xi[j]);
    out += ',';
    out += format_number(profile.values[j]);
    out += '\n';
  }
  write_text(csv_path, out);

  json j = extra;
  j["c"] = profile.params.speed;
  j["A"] = profile.params.integration_constant;
  j["E"] = profile.params.energy;
  j["regularity"] = std::string(to_string(profile.regularity));
  j["period"] = profile.period ? json(*profile.period) : json(nullptr);
  j["n_points"] = profile.values.size();
  j["spacing"] = profile.spacing();
  j["window_start"] = profile.window_start;
  write_text(json_path, dump(j));
}

json to_json(const TestFunction& t) {
  return {{"kind", std::string(to_string(t.kind))}, {"center", t.center}, {"width", t.width}};
}

TestFunction test_function_from_json(const json& j) {
  TestFunction t;
  t.kind = test_function_kind_from_string(j.value("kind", std::string("polynomial_bump")));
  t.center = j.at("center").get<double>();
  t.width = j.at("width").get<double>();
  if (!(t.width > 0.0)) throw Error(ErrorKind::Config, "test function width must be positive");
  return t;
}

json to_json(const SolverConfig& c) {
  return {{"cfl", c.cfl},
          {"dt_max", c.dt_max},
          {"dt_min", c.dt_min},
          {"t_end", c.t_end},
          {"snapshot_interval", c.snapshot_interval},
          {"breaking_slope_threshold", c.breaking_slope_threshold}};
}

SolverConfig solver_config_from_json(const json& j, SolverConfig c) {
  c.cfl = j.value("cfl", c.cfl);
  c.dt_max = j.value("dt_max", c.dt_max);
  c.dt_min = j.value("dt_min", c.dt_min);
  c.t_end = j.value("t_end", c.t_end);
  c.snapshot_interval = j.value("snapshot_interval", c.snapshot_interval);
  c.breaking_slope_threshold = j.value("breaking_slope_threshold", c.breaking_slope_threshold);
  c.validate();
  return c;
}

json to_json(const SymmetryReport& r) {
  json series = json::array();
  for (std::size_t i = 0; i < r.axis_series.times.size(); ++i) {
    series.push_back({{"t", r.axis_series.times[i]},
                      {"axis", r.axis_series.axes[i]},
                      {"asymmetry", r.axis_series.asymmetry[i]}});
  }
  return {{"verdict", std::string(to_string(r.verdict))},
          {"lambda_dot", r.lambda_dot},
          {"speed_estimate", r.speed_estimate},
          {"fit_residual", r.fit_residual},
          {"travel_error", r.travel_error},
          {"max_asymmetry", r.max_asymmetry},
          {"axis_series", series}};
}

json to_json(const ResidualReport& r) {
  json entries = json::array();
  for (const ResidualEntry& e : r.per_test_function) {
    json item = {{"space", to_json(e.space)}, {"residual", e.residual}, {"mass", e.mass}};
    if (e.time) item["time"] = to_json(*e.time);
    entries.push_back(item);
  }
  double worst = 0.0;
  for (const ResidualEntry& e : r.per_test_function) worst = std::max(worst, std::abs(e.residual));
  return {{"normalization", r.normalization}, {"max_abs_residual", worst}, {"per_test_function", entries}};
}

json to_json(const BreakingReport& r) {
  json slope = json::array();
  json sup = json::array();
  for (const auto& [t, v] : r.max_slope_history) slope.push_back({t, v});
  for (const auto& [t, v] : r.sup_norm_history) sup.push_back({t, v});
  return {{"detected", r.detected},
          {"t_detect", r.detected ? json(r.t_detect) : json(nullptr)},
          {"max_slope_history", slope},
          {"sup_norm_history", sup}};
}

}  // namespace mase::io
