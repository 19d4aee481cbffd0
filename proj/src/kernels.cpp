#include "mase/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace mase::kernels {
namespace {

inline double convolve_row(std::span<const double> table, std::span<const double> f, std::size_t i) {
  const std::size_t n = f.size();
  double acc = 0.0;
  // j <= i: index i - j; j > i: wraps to n + i - j.
  for (std::size_t j = 0; j <= i; ++j) acc += table[i - j] * f[j];
  for (std::size_t j = i + 1; j < n; ++j) acc += table[n + i - j] * f[j];
  return acc;
}

inline double scan_row(std::span<const double> v, std::size_t s) {
  const std::size_t n = v.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = (s + n - j) % n;
    const double d = v[j] - v[r];
    acc += d * d;
  }
  return acc;
}

}  // namespace

int kernel_image_count(double length) { return static_cast<int>(std::ceil(20.0 / length)) + 1; }

std::vector<double> periodic_kernel_table(const Grid& grid) {
  const int n = grid.n_points();
  const double h = grid.spacing();
  const double period = grid.length();
  const int images = kernel_image_count(period);
  std::vector<double> table(n);
  for (int j = 0; j < n; ++j) {
    const double d = j * h;
    double acc = 0.0;
    for (int m = -images; m <= images; ++m) acc += std::exp(-std::abs(d + m * period));
    table[j] = 0.5 * acc;
  }
  return table;
}

void circular_convolve_serial(std::span<const double> table, std::span<const double> f, double h,
                              std::span<double> out) {
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = h * convolve_row(table, f, i);
}

void circular_convolve_omp(std::span<const double> table, std::span<const double> f, double h,
                           std::span<double> out) {
  const long n = static_cast<long>(f.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = h * convolve_row(table, f, static_cast<std::size_t>(i));
}

void reflection_scan_serial(std::span<const double> v, std::span<double> out) {
  for (std::size_t s = 0; s < v.size(); ++s) out[s] = scan_row(v, s);
}

void reflection_scan_omp(std::span<const double> v, std::span<double> out) {
  const long n = static_cast<long>(v.size());
#pragma omp parallel for schedule(static)
  for (long s = 0; s < n; ++s) out[s] = scan_row(v, static_cast<std::size_t>(s));
}

}  // namespace mase::kernels
