#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mase/polynomial.hpp"

namespace mase {

/// (c, A, E): wave speed, constant of the first integration of the steady
/// equation, and level of the first integral.
struct TWParams {
  double speed = 0.0;
  double integration_constant = 0.0;
  double energy = 0.0;
};

struct PhasePoint {
  double elevation = 0.0;  // U
  double slope = 0.0;      // V = U'
};

enum class Regularity { SmoothSolitary, SmoothPeriodic, Peaked, Cusped, Composite };

std::string_view to_string(Regularity r);
Regularity regularity_from_string(std::string_view s);

/// Polynomial data of the profile ODE. A wave U(x - ct) of the nonlocal
/// equation satisfies (c+1)U + 7U^2 - (1 - d^2)^{-1} R(U) = A; applying
/// (1 - d^2) gives
///
///   D(U) U'' + 7 U'^2 + F(U) = 0,
///   D(U) = c + 1 + 14U,
///   F(U) = A - (c-1)U + 3U^2 - 2U^3 + 3U^4,
///
/// with first integral H(U, V) = D(U) V^2 + 2G(U), G' = F, G(0) = 0.
struct ProfileOde {
  explicit ProfileOde(const TWParams& p);

  Polynomial d;      // D
  Polynomial f;      // F
  Polynomial g;      // G
  Polynomial level;  // E - 2G; V^2 = level / D on the orbit
};

/// Continuous description of a profile, evaluable at any xi.
class ProfileShape {
 public:
  virtual ~ProfileShape() = default;
  /// (U, U') at xi. Slopes at a cusp are infinite.
  virtual PhasePoint at(double xi) const = 0;
};

struct TWProfile {
  TWParams params;
  std::vector<double> xi;      // uniform: xi_j = window_start + (j + sample_offset) * spacing
  std::vector<double> values;  // U(xi_j)
  std::vector<double> slopes;  // U'(xi_j) from the first integral
  Regularity regularity = Regularity::SmoothSolitary;
  std::optional<double> period;
  double window_start = 0.0;
  double sample_offset = 0.0;
  std::shared_ptr<const ProfileShape> shape;

  double spacing() const { return xi.size() > 1 ? xi[1] - xi[0] : 0.0; }
  double window_length() const { return spacing() * static_cast<double>(xi.size()); }
};

PhasePoint planar_field(const PhasePoint& p, const TWParams& params);
double first_integral(const PhasePoint& p, const TWParams& params);
double singular_line(const TWParams& params);
/// D(U), the coefficient of U''.
double singular_coefficient(double elevation, const TWParams& params);

struct TurningPoint {
  double value = 0.0;
  bool tangency = false;  // double root: an equilibrium sitting on the level set
};

/// Real roots of E - 2G(U) on [lo, hi], increasing.
std::vector<TurningPoint> turning_points(const TWParams& params, double lo = -10.0, double hi = 10.0);

struct SolitarySampling {
  double spacing = 0.1;
  int n_points = 1024;  // crest sits at index n_points / 2
};

/// Homoclinic profile with A = 0, E = 0. Requires the origin to be a saddle,
/// i.e. F'(0)/D(0) = -(c-1)/(c+1) < 0.
TWProfile solitary_profile(double speed, const SolitarySampling& sampling);

struct PeriodicSampling {
  int points_per_period = 256;
  double offset = 0.0;  // samples at (j + offset) * h; 0.5 keeps junctions off the grid
  int periods = 1;
};

/// Wave on a bounded orbit between two consecutive critical heights (roots of
/// E - 2G or the singular line). `near` selects the orbit containing that
/// elevation; otherwise smooth orbits are preferred over singular ones.
/// xi = 0 sits at the trough/junction, the crest at half a period.
TWProfile periodic_profile(const TWParams& params, const PeriodicSampling& sampling,
                           std::optional<double> near = std::nullopt);

/// Half-period quadrature int dU / sqrt((E - 2G)/D) between the orbit's ends,
/// the same orbit selection as periodic_profile.
double half_period(const TWParams& params, std::optional<double> near = std::nullopt);

/// Reverses xi over the profile's window.
TWProfile mirror(const TWProfile& profile);

/// Joins profiles end to end without checking level sets.
TWProfile concatenate_segments(std::span<const TWProfile> segments);

/// Same-level composite: every segment must carry `params` (c, A, E) within
/// 1e-10, else Error(EnergyMismatch) reporting |dE|. The result is checked to
/// be even about every junction.
TWProfile compose_segments(std::span<const TWProfile> segments, const TWParams& params);

/// max |U(c + s) - U(c - s)| over the sample offsets s of the profile.
double evenness_defect(const TWProfile& profile, double center);

/// Profile samples re-evaluated on n points over its window.
TWProfile resample(const TWProfile& profile, int n_points, double offset);

}  // namespace mase
