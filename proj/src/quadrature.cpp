#include "mase/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mase::quadrature {

GaussRule gauss_legendre(int n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {
const GaussRule& rule20() {
  static const GaussRule rule = gauss_legendre(20);
  return rule;
}
}  // namespace

double gauss20(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& r = rule20();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return acc * half;
}

MonotoneMap::MonotoneMap(std::function<double(double)> integrand, double s0, double s1, int panels)
    : w_(std::move(integrand)), s0_(s0), s1_(s1), width_((s1 - s0) / panels), cumulative_(panels + 1, 0.0) {
  for (int p = 0; p < panels; ++p) {
    const double a = s0_ + p * width_;
    cumulative_[p + 1] = cumulative_[p] + gauss20(w_, a, a + width_);
  }
}

double MonotoneMap::integral_to(double s) const {
  s = std::clamp(s, s0_, s1_);
  const int panels = static_cast<int>(cumulative_.size()) - 1;
  const int p = std::min(panels - 1, static_cast<int>((s - s0_) / width_));
  const double a = s0_ + p * width_;
  return cumulative_[p] + gauss20(w_, a, s);
}

double MonotoneMap::invert(double xi) const {
  if (xi <= 0.0) return s0_;
  if (xi >= total()) return s1_;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), xi);
  const int p = static_cast<int>(it - cumulative_.begin()) - 1;
  double lo = s0_ + p * width_;
  double hi = lo + width_;
  const double base = cumulative_[p];
  const double a = lo;
  // Safeguarded Newton: the derivative is the integrand itself.
  double s = lo + width_ * (xi - base) / (cumulative_[p + 1] - base);
  for (int it_n = 0; it_n < 100; ++it_n) {
    const double f = base + gauss20(w_, a, s) - xi;
    if (f > 0.0) {
      hi = s;
    } else {
      lo = s;
    }
    const double d = w_(s);
    double next = (d > 0.0) ? s - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15 * std::max(1.0, std::abs(s)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(s))) {
      return next;
    }
    s = next;
  }
  return s;
}

}  // namespace mase::quadrature
