#pragma once

#include <functional>
#include <vector>

namespace mase::quadrature {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on the three-term recurrence).
GaussRule gauss_legendre(int n);

/// Integral of f over [a, b] by one application of the 20-point rule.
double gauss20(const std::function<double(double)>& f, double a, double b);

/// Cumulative integral xi(s) = int_{s0}^{s} w(t) dt of a non-negative
/// integrand, tabulated on uniform panels and invertible: given xi, returns
/// the s with xi(s) = xi. Panels use the 20-point Gauss rule, so smooth
/// integrands are integrated to rounding accuracy.
class MonotoneMap {
 public:
  MonotoneMap(std::function<double(double)> integrand, double s0, double s1, int panels);

  double start() const noexcept { return s0_; }
  double end() const noexcept { return s1_; }
  double total() const noexcept { return cumulative_.back(); }

  double integral_to(double s) const;
  /// Inverse map; clamps to [s0, s1] outside [0, total()].
  double invert(double xi) const;

 private:
  std::function<double(double)> w_;
  double s0_;
  double s1_;
  double width_;
  std::vector<double> cumulative_;  // xi at panel edges
};

}  // namespace mase::quadrature
