#pragma once

#include <span>
#include <vector>

#include "mase/grid.hpp"

/// O(n^2) direct-sum kernels. Each has a serial reference and an OpenMP
/// version; both compute every output element with the same summation order,
/// so their results are bitwise identical for any thread count.
namespace mase::kernels {

/// Image count for the periodized exponential kernel: |m| <= ceil(20/L) + 1.
int kernel_image_count(double length);

/// Samples K(d) = 1/2 sum_{|m|<=M} exp(-|d + mL|) at d = j*h, j = 0..n-1.
std::vector<double> periodic_kernel_table(const Grid& grid);

/// out_i = h * sum_j table[(i - j) mod n] * f_j
void circular_convolve_serial(std::span<const double> table, std::span<const double> f, double h,
                              std::span<double> out);
void circular_convolve_omp(std::span<const double> table, std::span<const double> f, double h,
                           std::span<double> out);

/// out_s = sum_j (v_j - v_{(s - j) mod n})^2, the squared mismatch between v and
/// its reflection about the axis x = s*h/2, for every s.
void reflection_scan_serial(std::span<const double> v, std::span<double> out);
void reflection_scan_omp(std::span<const double> v, std::span<double> out);

}  // namespace mase::kernels
