#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mase {

/// Uniform periodic grid x_j = j * spacing, j = 0..n_points-1, period `length`.
class Grid {
 public:
  Grid(int n_points, double length);

  int n_points() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / n_; }
  double x(int j) const noexcept { return j * spacing(); }

  /// Angular wavenumber of FFT bin m (0 <= m <= n/2).
  double wavenumber(int m) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double length_;
};

/// Samples of a real periodic function on a Grid. Values are finite.
class Field {
 public:
  Field(Grid grid, std::vector<double> values);

  static Field zeros(const Grid& grid);
  static Field constant(const Grid& grid, double value);
  static Field sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max_abs() const;
  double mean() const;
  /// Discrete L2 norm sqrt(h * sum u_j^2).
  double l2_norm() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

struct State {
  double time = 0.0;
  Field u;

  State(double t, Field field);
};

void require_same_grid(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

}  // namespace mase
