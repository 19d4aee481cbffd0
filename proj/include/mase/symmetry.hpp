#pragma once

#include <string_view>
#include <vector>

#include "mase/evolution.hpp"
#include "mase/grid.hpp"

namespace mase {

struct AxisDetection {
  double axis = 0.0;       // in [0, L)
  double asymmetry = 0.0;  // |u - reflect(u, axis)| / |u - mean(u)|
  bool ambiguous = false;  // another axis fits equally well; `axis` is the smallest
};

struct AxisSeries {
  std::vector<double> times;
  std::vector<double> axes;  // unwrapped, so consecutive values are continuous
  std::vector<double> asymmetry;
};

enum class Verdict { TravelingWaveConsistent, SymmetryBroken, NotSymmetric };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct SymmetryReport {
  AxisSeries axis_series;
  double lambda_dot = 0.0;
  double speed_estimate = 0.0;  // equals lambda_dot, see verify_theorem
  double fit_residual = 0.0;    // max |lambda_i - (a + lambda_dot * t_i)|
  double travel_error = 0.0;
  double max_asymmetry = 0.0;
  Verdict verdict = Verdict::NotSymmetric;
};

/// x -> u(2*axis - x), band-limited for off-grid axes.
Field reflect(const Field& u, double axis);

/// Axis minimizing |u - reflect(u, axis)|. The reflection mismatch is
/// 2|v|^2 - 2 C(2 axis) with C the circular self-convolution of v = u - mean,
/// so the peak of C (one FFT) is located on the grid, refined parabolically
/// and then polished by Newton on C's trigonometric interpolant. Each peak
/// gives two axes half a period apart; the one at the larger |v| is returned.
AxisDetection detect_axis(const Field& u);

/// Brute-force oracle: best grid half-step axis from the direct O(n^2) scan.
AxisDetection scan_axis(const Field& u);

/// detect_axis per snapshot, unwrapped onto the branch nearest the previous
/// axis. Reflections about a and a + L/2 coincide, so branches are L/2 apart.
AxisSeries track_axis(const Trajectory& traj);

/// The drift of the axis is fitted by least squares. A profile u(x - ct) has
/// its axis at lambda = lambda_0 + c t, so the speed is +lambda_dot.
SymmetryReport verify_theorem(const Trajectory& traj, double symmetry_tol = 1e-6, double travel_tol = 1e-3);

}  // namespace mase
