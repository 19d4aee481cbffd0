#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mase/evolution.hpp"
#include "mase/traveling_wave.hpp"

namespace mase {

enum class TestFunctionKind { PolynomialBump, GaussianBumpTruncated };

std::string_view to_string(TestFunctionKind k);
TestFunctionKind test_function_kind_from_string(std::string_view s);

/// Compactly supported bump on [center - width, center + width].
///   polynomial:          (1 - t^2)^4,          t = (x - center) / width
///   gaussian truncated:  exp(-50 t^2), |t| <= 1 (endpoint values below 1e-16)
struct TestFunction {
  double center = 0.0;
  double width = 1.0;
  TestFunctionKind kind = TestFunctionKind::PolynomialBump;

  double support_lo() const { return center - width; }
  double support_hi() const { return center + width; }

  /// d^order/dx^order at x, order 0..3.
  double derivative(double x, int order) const;
  double value(double x) const { return derivative(x, 0); }
  /// Same, with x taken modulo `period` to the image nearest the center.
  double periodic_derivative(double x, int order, double period) const;
  /// Closed-form integral of |psi|.
  double mass() const;
  /// x -> psi(2*axis - x); the bump is even, so only the center moves.
  TestFunction reflected(double axis, double period) const;
};

struct ResidualEntry {
  TestFunction space;
  std::optional<TestFunction> time;
  double residual = 0.0;  // divided by the test-function mass
  double mass = 0.0;
};

struct ResidualReport {
  std::vector<ResidualEntry> per_test_function;
  double normalization = 1.0;  // smallest test-function mass in the batch
};

/// int (cU + U + 7U^2) psi' - (1 - d^2)^{-1} R(U) psi' dxi over the profile's
/// window, divided by int |psi|. R uses the profile's first-integral slopes,
/// which stay exact across peaks where a spectral derivative rings.
double steady_weak_residual(const TWProfile& profile, const TestFunction& psi);

/// int int u phi_t - (u + 7u^2) phi_x + (1 - d^2)^{-1} R(u) phi_x dt dx with
/// phi(t, x) = rho(t) psi(x); trapezoid in t over the snapshots, divided by
/// int |rho| * int |psi|.
double unsteady_weak_residual(const Trajectory& traj, const TestFunction& psi, const TestFunction& rho);

struct BracketPair {
  double lhs = 0.0;  // <P(u_lambda), phi>
  double rhs = 0.0;  // <P(u), phi_lambda>
};

/// Both spatial brackets of the reflection step, P = (1 - d^2)^{-1} R.
BracketPair reflection_bracket_check(const Field& u, double lambda, const TestFunction& phi);

ResidualReport steady_residual_batch(const TWProfile& profile, std::span<const TestFunction> tests);
ResidualReport unsteady_residual_batch(const Trajectory& traj, std::span<const TestFunction> space_tests,
                                       const TestFunction& rho);

/// Reproducible family of polynomial bumps with centers in [lo + w, hi - w].
std::vector<TestFunction> random_test_functions(std::uint64_t seed, int count, double lo, double hi,
                                                double min_width, double max_width);

}  // namespace mase
