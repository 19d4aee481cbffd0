#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mase/grid.hpp"

namespace mase::fixtures {

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Random trigonometric polynomial with modes 1..max_mode and coefficients
/// of size ~ amplitude / m^2, plus a random mean.
struct TrigPoly {
  double length = 1.0;
  double mean = 0.0;
  std::vector<double> a, b;  // cos and sin coefficients of mode m = index + 1

  double k(int m) const { return 2.0 * std::numbers::pi * m / length; }

  double value(double x) const {
    double s = mean;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double kx = k(static_cast<int>(i) + 1) * x;
      s += a[i] * std::cos(kx) + b[i] * std::sin(kx);
    }
    return s;
  }

  double derivative(double x, int order) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double km = k(static_cast<int>(i) + 1);
      const double kx = km * x;
      const double c = std::cos(kx), sn = std::sin(kx);
      double dc = c, ds = sn;
      const double p = std::pow(km, order);
      switch (order % 4) {
        case 0: dc = c; ds = sn; break;
        case 1: dc = -sn; ds = c; break;
        case 2: dc = -c; ds = -sn; break;
        default: dc = sn; ds = -c; break;
      }
      s += p * (a[i] * dc + b[i] * ds);
    }
    return s;
  }

  Field sample(const Grid& g) const {
    return Field::sample(g, [this](double x) { return value(x); });
  }
};

inline TrigPoly random_trig_poly(std::mt19937_64& rng, double length, int max_mode, double amplitude,
                                 double mean_range = 0.0) {
  TrigPoly p;
  p.length = length;
  p.mean = uniform(rng, -mean_range, mean_range);
  for (int m = 1; m <= max_mode; ++m) {
    const double scale = amplitude / (m * m);
    p.a.push_back(uniform(rng, -scale, scale));
    p.b.push_back(uniform(rng, -scale, scale));
  }
  return p;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace mase::fixtures
