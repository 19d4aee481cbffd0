#include "mase/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mase/error.hpp"
#include "mase/nonlocal.hpp"
#include "mase/spectral.hpp"

namespace mase {

void SolverConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(cfl) || !positive(dt_max) || !positive(dt_min) || !positive(t_end) ||
      !positive(snapshot_interval) || !positive(breaking_slope_threshold)) {
    throw Error(ErrorKind::InvalidArgument, "solver parameters must be positive and finite");
  }
  if (!(dt_min < dt_max)) throw Error(ErrorKind::InvalidArgument, "dt_min must be smaller than dt_max");
  if (snapshot_interval > t_end) {
    throw Error(ErrorKind::InvalidArgument, "snapshot_interval must not exceed t_end");
  }
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::BreakingDetected: return "breaking_detected";
    case Termination::DtUnderflow: return "dt_underflow";
  }
  return "completed";
}

Termination termination_from_string(std::string_view s) {
  if (s == "completed") return Termination::Completed;
  if (s == "breaking_detected") return Termination::BreakingDetected;
  if (s == "dt_underflow") return Termination::DtUnderflow;
  throw Error(ErrorKind::Config, "unknown termination '" + std::string(s) + "'");
}

namespace {

std::vector<double> axpy(const Field& u, double a, const Field& k) {
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = u[j] + a * k[j];
    if (!std::isfinite(v[j])) {
      throw Error(ErrorKind::IntegrationFailure, "non-finite RK stage value at index " + std::to_string(j));
    }
  }
  return v;
}

Field rhs_checked(const Field& u) {
  try {
    return evolution_rhs(u);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain) throw Error(ErrorKind::IntegrationFailure, e.detail());
    throw;
  }
}

}  // namespace

State step(const State& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  const Grid& g = s.u.grid();
  const Field k1 = rhs_checked(s.u);
  const Field k2 = rhs_checked(Field(g, axpy(s.u, 0.5 * dt, k1)));
  const Field k3 = rhs_checked(Field(g, axpy(s.u, 0.5 * dt, k2)));
  const Field k4 = rhs_checked(Field(g, axpy(s.u, dt, k3)));
  std::vector<double> next(s.u.size());
  for (std::size_t j = 0; j < next.size(); ++j) {
    next[j] = s.u[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!std::isfinite(next[j])) {
      throw Error(ErrorKind::IntegrationFailure, "non-finite value after RK step at index " + std::to_string(j));
    }
  }
  return State(s.time + dt, Field(g, std::move(next)));
}

double stable_dt(const Field& u, const SolverConfig& config) {
  double speed = 0.0;
  for (double v : u.values()) speed = std::max(speed, std::abs(1.0 + 14.0 * v));
  return std::min(config.dt_max, config.cfl * u.grid().spacing() / (1.0 + speed));
}

double max_slope(const Field& u) { return spectral::derivative(u, 1).max_abs(); }

Trajectory evolve(const State& initial, const SolverConfig& config) {
  config.validate();
  Trajectory traj{{initial}, config, Termination::Completed};
  State current = initial;
  const double t0 = initial.time;
  const double t_final = t0 + config.t_end;
  // Snapshot k sits at t0 + k * interval; indexing avoids accumulated drift.
  long next_index = 1;
  auto snapshot_time = [&](long k) { return std::min(t0 + k * config.snapshot_interval, t_final); };
  const double eps = 1e-12 * std::max(1.0, t_final);

  while (current.time < t_final - eps) {
    const double target = snapshot_time(next_index);
    double dt = stable_dt(current.u, config);
    if (dt < config.dt_min) {
      traj.termination = Termination::DtUnderflow;
      break;
    }
    bool lands = false;
    if (current.time + dt >= target - eps) {
      dt = target - current.time;
      lands = true;
    }
    State next = current;
    for (;;) {
      try {
        next = step(current, dt);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::IntegrationFailure) throw;
        dt *= 0.5;
        lands = false;
        if (dt < config.dt_min) break;
      }
    }
    if (dt < config.dt_min) {
      traj.termination = Termination::DtUnderflow;
      break;
    }
    if (lands) next = State(target, next.u);
    current = std::move(next);

    if (max_slope(current.u) >= config.breaking_slope_threshold) {
      traj.snapshots.push_back(current);
      traj.termination = Termination::BreakingDetected;
      break;
    }
    if (lands) {
      traj.snapshots.push_back(current);
      ++next_index;
    }
  }
  return traj;
}

BreakingReport detect_breaking(const Trajectory& traj) {
  if (traj.snapshots.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  BreakingReport report;
  const double initial_sup = traj.snapshots.front().u.max_abs();
  for (const State& s : traj.snapshots) {
    const double slope = max_slope(s.u);
    const double sup = s.u.max_abs();
    report.max_slope_history.emplace_back(s.time, slope);
    report.sup_norm_history.emplace_back(s.time, sup);
    if (!report.detected && slope >= traj.config.breaking_slope_threshold && sup <= 2.0 * initial_sup) {
      report.detected = true;
      report.t_detect = s.time;
    }
  }
  return report;
}

double linear_phase_speed(double k) { return (1.0 - k * k) / (1.0 + k * k); }

}  // namespace mase
