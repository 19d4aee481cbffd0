#include "mase/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "mase/error.hpp"
#include "mase/nonlocal.hpp"
#include "mase/spectral.hpp"

namespace mase {

namespace {
constexpr double kGaussRate = 50.0;
}

std::string_view to_string(TestFunctionKind k) {
  return k == TestFunctionKind::PolynomialBump ? "polynomial_bump" : "gaussian_bump_truncated";
}

TestFunctionKind test_function_kind_from_string(std::string_view s) {
  if (s == "polynomial_bump") return TestFunctionKind::PolynomialBump;
  if (s == "gaussian_bump_truncated") return TestFunctionKind::GaussianBumpTruncated;
  throw Error(ErrorKind::Config, "unknown test function kind '" + std::string(s) + "'");
}

double TestFunction::derivative(double x, int order) const {
  const double t = (x - center) / width;
  if (std::abs(t) >= 1.0) return 0.0;
  const double q = 1.0 - t * t;
  const double w = width;
  if (kind == TestFunctionKind::PolynomialBump) {
    switch (order) {
      case 0: return q * q * q * q;
      case 1: return -8.0 * t * q * q * q / w;
      case 2: return q * q * (56.0 * t * t - 8.0) / (w * w);
      case 3: return q * 48.0 * t * (3.0 - 7.0 * t * t) / (w * w * w);
      default: break;
    }
  } else {
    const double a = kGaussRate;
    const double e = std::exp(-a * t * t);
    switch (order) {
      case 0: return e;
      case 1: return -2.0 * a * t * e / w;
      case 2: return (4.0 * a * a * t * t - 2.0 * a) * e / (w * w);
      case 3: return (-8.0 * a * a * a * t * t * t + 12.0 * a * a * t) * e / (w * w * w);
      default: break;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "test function derivative order must be 0..3");
}

double TestFunction::periodic_derivative(double x, int order, double period) const {
  const double d = x - center;
  return derivative(center + d - period * std::round(d / period), order);
}

double TestFunction::mass() const {
  if (kind == TestFunctionKind::PolynomialBump) return width * 256.0 / 315.0;
  return width * std::sqrt(std::numbers::pi / kGaussRate) * std::erf(std::sqrt(kGaussRate));
}

TestFunction TestFunction::reflected(double axis, double period) const {
  TestFunction r = *this;
  double c = std::fmod(2.0 * axis - center, period);
  if (c < 0.0) c += period;
  r.center = c;
  return r;
}

namespace {

void require_inside(const TestFunction& psi, double lo, double hi, const char* what) {
  if (psi.support_lo() < lo || psi.support_hi() > hi) {
    std::ostringstream msg;
    msg << what << " support [" << psi.support_lo() << ", " << psi.support_hi() << "] leaves the window [" << lo
        << ", " << hi << "]";
    throw Error(ErrorKind::Support, msg.str());
  }
}

Field nonlocal_term(const Field& u) { return spectral::helmholtz_inverse(reaction_term(u)); }

}  // namespace

double steady_weak_residual(const TWProfile& profile, const TestFunction& psi) {
  const int n = static_cast<int>(profile.values.size());
  const double h = profile.spacing();
  if (n < 16) throw Error(ErrorKind::InvalidArgument, "profile has too few samples");
  if (h > psi.width / 32.0 * (1.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "profile spacing exceeds test-function width / 32");
  }
  require_inside(psi, profile.window_start, profile.window_start + profile.window_length(), "test function");

  const Grid grid(n, profile.window_length());
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) {
    const double u = profile.values[j];
    const double v = profile.slopes[j];
    const double u2 = u * u;
    r[j] = 2.0 * u + 10.0 * u2 - 2.0 * u2 * u + 3.0 * u2 * u2 - 7.0 * v * v;
  }
  const Field p = spectral::helmholtz_inverse(Field(grid, std::move(r)));
  const double c = profile.params.speed;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double u = profile.values[j];
    acc += ((c + 1.0) * u + 7.0 * u * u - p[j]) * psi.derivative(profile.xi[j], 1);
  }
  return h * acc / psi.mass();
}

double unsteady_weak_residual(const Trajectory& traj, const TestFunction& psi, const TestFunction& rho) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 3) throw Error(ErrorKind::InvalidArgument, "unsteady residual needs >= 3 snapshots");
  const Grid& grid = snaps.front().u.grid();
  if (!(rho.support_lo() > snaps.front().time && rho.support_hi() < snaps.back().time)) {
    throw Error(ErrorKind::Support, "time test function must be supported strictly inside the trajectory window");
  }
  require_inside(psi, 0.0, grid.length(), "space test function");

  const int n = grid.n_points();
  const double h = grid.spacing();
  std::vector<double> psi0(n), psi1(n);
  for (int j = 0; j < n; ++j) {
    psi0[j] = psi.derivative(grid.x(j), 0);
    psi1[j] = psi.derivative(grid.x(j), 1);
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const double t = snaps[i].time;
    const double r0 = rho.derivative(t, 0);
    const double r1 = rho.derivative(t, 1);
    if (r0 == 0.0 && r1 == 0.0) continue;
    const double left = i > 0 ? t - snaps[i - 1].time : 0.0;
    const double right = i + 1 < snaps.size() ? snaps[i + 1].time - t : 0.0;
    const double weight = 0.5 * (left + right);

    const Field& u = snaps[i].u;
    std::vector<double> sq(n);
    for (int j = 0; j < n; ++j) sq[j] = 7.0 * u[j] * u[j];
    const Field flux = u + spectral::dealias(Field(grid, std::move(sq)));
    const Field p = nonlocal_term(u);
    double mass_term = 0.0;
    double flux_term = 0.0;
    for (int j = 0; j < n; ++j) {
      mass_term += u[j] * psi0[j];
      flux_term += (flux[j] - p[j]) * psi1[j];
    }
    acc += weight * h * (r1 * mass_term - r0 * flux_term);
  }
  return acc / (psi.mass() * rho.mass());
}

BracketPair reflection_bracket_check(const Field& u, double lambda, const TestFunction& phi) {
  const Grid& grid = u.grid();
  const double period = grid.length();
  if (!(2.0 * phi.width < period)) throw Error(ErrorKind::Support, "test function wider than the domain");
  const TestFunction phi_reflected = phi.reflected(lambda, period);
  const Field p_reflected = nonlocal_term(spectral::reflect(u, lambda));
  const Field p = nonlocal_term(u);
  const double h = grid.spacing();
  BracketPair out;
  for (int j = 0; j < grid.n_points(); ++j) {
    const double x = grid.x(j);
    out.lhs += p_reflected[j] * phi.periodic_derivative(x, 0, period);
    out.rhs += p[j] * phi_reflected.periodic_derivative(x, 0, period);
  }
  out.lhs *= h;
  out.rhs *= h;
  return out;
}

ResidualReport steady_residual_batch(const TWProfile& profile, std::span<const TestFunction> tests) {
  ResidualReport report;
  report.per_test_function.resize(tests.size());
  const long n = static_cast<long>(tests.size());
  std::vector<std::string> errors(tests.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      report.per_test_function[i] = {tests[i], std::nullopt, steady_weak_residual(profile, tests[i]), tests[i].mass()};
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error(ErrorKind::Support, e);
  }
  report.normalization = 0.0;
  for (const ResidualEntry& e : report.per_test_function) {
    report.normalization = report.normalization == 0.0 ? e.mass : std::min(report.normalization, e.mass);
  }
  return report;
}

ResidualReport unsteady_residual_batch(const Trajectory& traj, std::span<const TestFunction> space_tests,
                                       const TestFunction& rho) {
  ResidualReport report;
  for (const TestFunction& psi : space_tests) {
    report.per_test_function.push_back({psi, rho, unsteady_weak_residual(traj, psi, rho), psi.mass() * rho.mass()});
  }
  report.normalization = 0.0;
  for (const ResidualEntry& e : report.per_test_function) {
    report.normalization = report.normalization == 0.0 ? e.mass : std::min(report.normalization, e.mass);
  }
  return report;
}

std::vector<TestFunction> random_test_functions(std::uint64_t seed, int count, double lo, double hi,
                                                double min_width, double max_width) {
  std::mt19937_64 rng(seed);
  // Explicit mapping from raw engine output keeps families identical across
  // standard libraries.
  auto uniform = [&rng](double a, double b) { return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  std::vector<TestFunction> out;
  for (int i = 0; i < count; ++i) {
    const double w = uniform(min_width, max_width);
    if (hi - lo <= 2.0 * w) throw Error(ErrorKind::Support, "window too small for the requested test-function widths");
    out.push_back({uniform(lo + w, hi - w), w, TestFunctionKind::PolynomialBump});
  }
  return out;
}

}  // namespace mase
