#include "mase/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mase/error.hpp"

namespace mase {

Grid::Grid(int n_points, double length) : n_(n_points), length_(length) {
  if (n_points < 16) {
    throw Error(ErrorKind::InvalidArgument, "grid needs at least 16 points, got " + std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::InvalidArgument, "grid length must be positive and finite");
  }
}

double Grid::wavenumber(int m) const noexcept {
  return 2.0 * std::numbers::pi * m / length_;
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.n_points())) {
    throw Error(ErrorKind::InvalidArgument, "field size " + std::to_string(values_.size()) +
                                                " does not match grid size " + std::to_string(grid_.n_points()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw Error(ErrorKind::Domain, "non-finite field value at index " + std::to_string(j));
    }
  }
}

Field Field::zeros(const Grid& grid) { return constant(grid, 0.0); }

Field Field::constant(const Grid& grid, double value) {
  return Field(grid, std::vector<double>(grid.n_points(), value));
}

Field Field::sample(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.n_points());
  for (int j = 0; j < grid.n_points(); ++j) v[j] = fn(grid.x(j));
  return Field(grid, std::move(v));
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double Field::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(grid_.spacing() * s);
}

State::State(double t, Field field) : time(t), u(std::move(field)) {
  if (!std::isfinite(t) || t < 0.0) {
    throw Error(ErrorKind::Domain, "state time must be finite and non-negative");
  }
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorKind::GridMismatch, "fields are sampled on different grids");
  }
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] + b[j];
  return Field(a.grid(), std::move(v));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] - b[j];
  return Field(a.grid(), std::move(v));
}

Field operator*(double s, const Field& a) {
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = s * a[j];
  return Field(a.grid(), std::move(v));
}

}  // namespace mase
