#include "mase/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "mase/error.hpp"
#include "mase/kernels.hpp"
#include "mase/spectral.hpp"

namespace mase {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::TravelingWaveConsistent: return "traveling_wave_consistent";
    case Verdict::SymmetryBroken: return "symmetry_broken";
    case Verdict::NotSymmetric: return "not_symmetric";
  }
  return "not_symmetric";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "traveling_wave_consistent") return Verdict::TravelingWaveConsistent;
  if (s == "symmetry_broken") return Verdict::SymmetryBroken;
  if (s == "not_symmetric") return Verdict::NotSymmetric;
  throw Error(ErrorKind::Config, "unknown verdict '" + std::string(s) + "'");
}

Field reflect(const Field& u, double axis) { return spectral::reflect(u, axis); }

namespace {

constexpr double kTieTolerance = 1e-9;

Field centered(const Field& u) {
  const double m = u.mean();
  std::vector<double> v(u.data());
  for (double& x : v) x -= m;
  Field out(u.grid(), std::move(v));
  if (out.l2_norm() <= 1e-12) throw Error(ErrorKind::UndefinedAxis, "field is constant; its symmetry axis is undefined");
  return out;
}

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

// Value and first two derivatives of the interpolant of the self-convolution.
struct Conv {
  const spectral::Spectrum& sq;
  const Grid& grid;

  void eval(double sigma, double& c1, double& c2) const {
    const int n = grid.n_points();
    c1 = c2 = 0.0;
    for (int m = 1; m <= n / 2; ++m) {
      const double k = grid.wavenumber(m);
      const double w = (2 * m == n) ? 1.0 : 2.0;
      const std::complex<double> z = sq[m] * std::polar(1.0, k * sigma);
      c1 += -w * k * z.imag();
      c2 += -w * k * k * z.real();
    }
    c1 /= n;
    c2 /= n;
  }
};

double polish(const Conv& conv, double sigma0, double h) {
  double sigma = sigma0;
  for (int it = 0; it < 30; ++it) {
    double c1, c2;
    conv.eval(sigma, c1, c2);
    if (!(c2 < 0.0)) break;
    double step = -c1 / c2;
    step = std::clamp(step, -0.5 * h, 0.5 * h);
    sigma += step;
    if (std::abs(step) < 1e-14 * h) break;
  }
  return std::abs(sigma - sigma0) <= 1.5 * h ? sigma : sigma0;
}

AxisDetection pick_axis(const Field& u, const Field& v, double sigma, bool tie) {
  const double length = u.grid().length();
  const double a = wrap(0.5 * sigma, length);
  const double b = wrap(0.5 * sigma + 0.5 * length, length);
  const double va = std::abs(spectral::evaluate(v, a));
  const double vb = std::abs(spectral::evaluate(v, b));
  AxisDetection out;
  if (std::abs(va - vb) <= kTieTolerance * std::max(va, vb)) {
    out.axis = std::min(a, b);
    out.ambiguous = true;
  } else {
    out.axis = va > vb ? a : b;
  }
  out.ambiguous = out.ambiguous || tie;
  out.asymmetry = std::min(2.0, (v - reflect(v, out.axis)).l2_norm() / v.l2_norm());
  return out;
}

}  // namespace

AxisDetection detect_axis(const Field& u) {
  const Field v = centered(u);
  const Grid& grid = v.grid();
  const int n = grid.n_points();
  const double h = grid.spacing();

  spectral::Spectrum sq = spectral::forward(v.values());
  for (auto& z : sq) z *= z;
  const std::vector<double> c = spectral::inverse(sq, n);

  const int best = static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin());
  const double cmax = c[best];

  // Another well-separated local maximum of equal height means a second,
  // genuinely different reflection.
  bool tie = false;
  for (int s = 0; s < n; ++s) {
    const int dist = std::min(std::abs(s - best), n - std::abs(s - best));
    if (dist <= 2) continue;
    const double prev = c[(s + n - 1) % n];
    const double next = c[(s + 1) % n];
    if (c[s] >= prev && c[s] >= next && cmax - c[s] <= kTieTolerance * std::abs(cmax)) tie = true;
  }

  const double cm = c[(best + n - 1) % n];
  const double cp = c[(best + 1) % n];
  const double denom = cm - 2.0 * cmax + cp;
  double offset = denom < 0.0 ? 0.5 * (cm - cp) / denom : 0.0;
  offset = std::clamp(offset, -0.5, 0.5);
  const double sigma0 = (best + offset) * h;
  const double sigma = polish(Conv{sq, grid}, sigma0, h);

  AxisDetection out = pick_axis(u, v, sigma, false);
  if (tie) {
    // Report the smallest axis among the tied peaks.
    for (int s = 0; s < n; ++s) {
      const int dist = std::min(std::abs(s - best), n - std::abs(s - best));
      if (dist <= 2) continue;
      const double prev = c[(s + n - 1) % n];
      const double next = c[(s + 1) % n];
      if (!(c[s] >= prev && c[s] >= next && cmax - c[s] <= kTieTolerance * std::abs(cmax))) continue;
      const double d = prev - 2.0 * c[s] + next;
      const double o = d < 0.0 ? std::clamp(0.5 * (prev - next) / d, -0.5, 0.5) : 0.0;
      const AxisDetection other = pick_axis(u, v, polish(Conv{sq, grid}, (s + o) * h, h), false);
      if (other.axis < out.axis) out = other;
    }
    out.ambiguous = true;
  }
  return out;
}

AxisDetection scan_axis(const Field& u) {
  const Field v = centered(u);
  const int n = v.grid().n_points();
  std::vector<double> mismatch(n);
  kernels::reflection_scan_omp(v.values(), mismatch);
  const int best = static_cast<int>(std::min_element(mismatch.begin(), mismatch.end()) - mismatch.begin());
  return pick_axis(u, v, best * v.grid().spacing(), false);
}

AxisSeries track_axis(const Trajectory& traj) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 3) throw Error(ErrorKind::InvalidArgument, "track_axis needs >= 3 snapshots");
  const long count = static_cast<long>(snaps.size());
  std::vector<AxisDetection> found(snaps.size());
  std::vector<std::string> errors(snaps.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      found[i] = detect_axis(snaps[i].u);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      detect_axis(snaps[i].u);  // rethrows with the original kind
    }
  }

  const double branch = 0.5 * snaps.front().u.grid().length();
  AxisSeries series;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    double axis = found[i].axis;
    if (i > 0) {
      const double prev = series.axes.back();
      axis += branch * std::round((prev - axis) / branch);
    }
    series.times.push_back(snaps[i].time);
    series.axes.push_back(axis);
    series.asymmetry.push_back(found[i].asymmetry);
  }
  return series;
}

SymmetryReport verify_theorem(const Trajectory& traj, double symmetry_tol, double travel_tol) {
  if (!(symmetry_tol > 0.0) || !(travel_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  SymmetryReport report;
  report.axis_series = track_axis(traj);
  const AxisSeries& s = report.axis_series;
  const std::size_t n = s.times.size();

  double tm = 0.0, am = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += s.times[i];
    am += s.axes[i];
  }
  tm /= static_cast<double>(n);
  am /= static_cast<double>(n);
  double stt = 0.0, sta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (s.times[i] - tm) * (s.times[i] - tm);
    sta += (s.times[i] - tm) * (s.axes[i] - am);
  }
  report.lambda_dot = sta / stt;
  report.speed_estimate = report.lambda_dot;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = am + report.lambda_dot * (s.times[i] - tm);
    report.fit_residual = std::max(report.fit_residual, std::abs(s.axes[i] - fit));
    report.max_asymmetry = std::max(report.max_asymmetry, s.asymmetry[i]);
  }

  const Field& u0 = traj.snapshots.front().u;
  const double t0 = traj.snapshots.front().time;
  const double norm0 = u0.l2_norm();
  for (const State& snap : traj.snapshots) {
    const Field moved = spectral::shift(u0, report.speed_estimate * (snap.time - t0));
    report.travel_error = std::max(report.travel_error, (snap.u - moved).l2_norm() / norm0);
  }

  if (report.max_asymmetry > symmetry_tol) {
    report.verdict = Verdict::NotSymmetric;
  } else if (report.travel_error < travel_tol) {
    report.verdict = Verdict::TravelingWaveConsistent;
  } else {
    report.verdict = Verdict::SymmetryBroken;
  }
  return report;
}

}  // namespace mase
