#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "mase/grid.hpp"

namespace mase {

struct SolverConfig {
  double cfl = 0.3;
  double dt_max = 0.01;
  double dt_min = 1e-8;  // breaking floor
  double t_end = 1.0;
  double snapshot_interval = 0.1;
  double breaking_slope_threshold = 1e3;

  /// Throws Error(InvalidArgument) unless 0 < dt_min < dt_max and
  /// 0 < snapshot_interval <= t_end.
  void validate() const;
};

enum class Termination { Completed, BreakingDetected, DtUnderflow };

std::string_view to_string(Termination t);
Termination termination_from_string(std::string_view s);

struct Trajectory {
  std::vector<State> snapshots;  // strictly increasing times, [0] is the initial condition
  SolverConfig config;
  Termination termination = Termination::Completed;
};

struct BreakingReport {
  bool detected = false;
  double t_detect = 0.0;
  std::vector<std::pair<double, double>> max_slope_history;  // (t, max|u_x|)
  std::vector<std::pair<double, double>> sup_norm_history;   // (t, max|u|)
};

/// One classical RK4 step of the nonlocal form. Throws
/// Error(IntegrationFailure) when a stage goes non-finite.
State step(const State& s, double dt);

/// cfl * h / (1 + max|1 + 14u|), capped at dt_max.
double stable_dt(const Field& u, const SolverConfig& config);

double max_slope(const Field& u);

Trajectory evolve(const State& initial, const SolverConfig& config);

/// Breaking = max|u_x| reaches the configured threshold while max|u| stays
/// within twice its initial value.
BreakingReport detect_breaking(const Trajectory& traj);

/// Phase speed of the linearized equation u_t + u_x + u_xxx - u_xxt = 0.
double linear_phase_speed(double k);

}  // namespace mase
