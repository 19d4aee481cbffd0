#include "mase/traveling_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "mase/error.hpp"
#include "mase/quadrature.hpp"

namespace mase {

std::string_view to_string(Regularity r) {
  switch (r) {
    case Regularity::SmoothSolitary: return "smooth_solitary";
    case Regularity::SmoothPeriodic: return "smooth_periodic";
    case Regularity::Peaked: return "peaked";
    case Regularity::Cusped: return "cusped";
    case Regularity::Composite: return "composite";
  }
  return "composite";
}

Regularity regularity_from_string(std::string_view s) {
  for (Regularity r : {Regularity::SmoothSolitary, Regularity::SmoothPeriodic, Regularity::Peaked,
                       Regularity::Cusped, Regularity::Composite}) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorKind::Config, "unknown regularity '" + std::string(s) + "'");
}

ProfileOde::ProfileOde(const TWParams& p)
    : d{p.speed + 1.0, 14.0},
      f{p.integration_constant, -(p.speed - 1.0), 3.0, -2.0, 3.0},
      g(f.antiderivative()),
      level(Polynomial{p.energy} - 2.0 * g) {}

PhasePoint planar_field(const PhasePoint& p, const TWParams& params) {
  const ProfileOde ode(params);
  const double d = ode.d(p.elevation);
  if (std::abs(d) <= 1e-12) {
    std::ostringstream msg;
    msg << "elevation " << p.elevation << " is on the singular line (D = " << d << ")";
    throw Error(ErrorKind::Singularity, msg.str());
  }
  return {p.slope, -(7.0 * p.slope * p.slope + ode.f(p.elevation)) / d};
}

double first_integral(const PhasePoint& p, const TWParams& params) {
  const ProfileOde ode(params);
  return ode.d(p.elevation) * p.slope * p.slope + 2.0 * ode.g(p.elevation);
}

double singular_line(const TWParams& params) { return -(params.speed + 1.0) / 14.0; }

double singular_coefficient(double elevation, const TWParams& params) {
  return params.speed + 1.0 + 14.0 * elevation;
}

std::vector<TurningPoint> turning_points(const TWParams& params, double lo, double hi) {
  const ProfileOde ode(params);
  std::vector<TurningPoint> out;
  for (const RealRoot& r : isolate_real_roots(ode.level, lo, hi)) out.push_back({r.value, r.tangency});
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class EndKind {
  Turning,         // simple root of E - 2G, V = 0
  SingularFinite,  // on the singular line and on the level set: finite slope
  SingularCusp,    // on the singular line off the level set: unbounded slope
  Saddle,          // double root: reached only as xi -> infinity
};

double ipow(double x, int e) {
  switch (e) {
    case -1: return 1.0 / x;
    case 0: return 1.0;
    case 1: return x;
    case 2: return x * x;
    default: return std::pow(x, e);
  }
}

// One monotone branch of an orbit, from `top` (xi = 0) to `bottom`. Writing
// E - 2G = (U-T)^a (U-B)^b Nr(U) and D = 14 (U - singular point) when an end
// sits on the singular line, V^2 = (U-T)^eT (U-B)^eB Nr/Dr with the common
// factors cancelled symbolically. Near each end the substitution
// U = end + s sigma^2 turns the inverse square-root singularity of
// dxi = dU/|V| into a smooth integrand; a saddle end uses U - B ~ e^{-w}.
class Branch {
 public:
  Branch(const TWParams& params, double top, EndKind top_kind, double bottom, EndKind bottom_kind)
      : ode_(params), top_(top), bottom_(bottom), top_kind_(top_kind), bottom_kind_(bottom_kind) {
    if (top_kind == EndKind::Saddle) throw Error(ErrorKind::InvalidArgument, "branch top cannot be a saddle");
    dir_ = bottom > top ? 1.0 : -1.0;
    mid_ = 0.5 * (top + bottom);

    const bool top_sing = top_kind == EndKind::SingularFinite || top_kind == EndKind::SingularCusp;
    const bool bottom_sing = bottom_kind == EndKind::SingularFinite || bottom_kind == EndKind::SingularCusp;
    const int a = (top_kind == EndKind::SingularCusp) ? 0 : 1;
    const int b = bottom_kind == EndKind::Saddle ? 2 : (bottom_kind == EndKind::SingularCusp ? 0 : 1);
    reduced_ = ode_.level;
    for (int i = 0; i < a; ++i) reduced_ = reduced_.deflate(top_).first;
    for (int i = 0; i < b; ++i) reduced_ = reduced_.deflate(bottom_).first;
    singular_denominator_ = top_sing || bottom_sing;
    e_top_ = a - (top_sing ? 1 : 0);
    e_bottom_ = b - (bottom_sing ? 1 : 0);

    top_map_.emplace([this](double s) { return top_integrand(s); }, 0.0, std::sqrt(std::abs(mid_ - top_)), 48);
    if (bottom_kind_ == EndKind::Saddle) {
      bottom_map_.emplace([this](double w) { return tail_integrand(w); }, 0.0, kTailSpan, 240);
      half_length_ = kInf;
    } else {
      bottom_map_.emplace([this](double s) { return bottom_integrand(s); }, 0.0,
                          std::sqrt(std::abs(mid_ - bottom_)), 48);
      half_length_ = top_map_->total() + bottom_map_->total();
    }
    if (!std::isfinite(top_map_->total()) || !std::isfinite(bottom_map_->total())) {
      throw Error(ErrorKind::Nonexistence, "orbit leaves the admissible region V^2 > 0 between " +
                                               std::to_string(top_) + " and " + std::to_string(bottom_));
    }
  }

  Branch(const Branch&) = delete;
  Branch& operator=(const Branch&) = delete;

  double half_length() const { return half_length_; }
  double top() const { return top_; }
  double bottom() const { return bottom_; }

  /// (U, dU/dxi) at distance xi >= 0 from the top, moving toward the bottom.
  PhasePoint at(double xi) const {
    const double xi_mid = top_map_->total();
    if (xi <= xi_mid) {
      const double s = top_map_->invert(xi);
      const double u = top_ + dir_ * s * s;
      return {u, dir_ * speed_near(s, u, e_top_, dir_, rest_top(u))};
    }
    if (bottom_kind_ == EndKind::Saddle) {
      const double xi_tail = xi - xi_mid;
      if (xi_tail >= bottom_map_->total()) return {bottom_, 0.0};
      const double w = bottom_map_->invert(xi_tail);
      const double u = bottom_ + (mid_ - bottom_) * std::exp(-w);
      return {u, dir_ * std::abs(u - bottom_) * std::sqrt(rest_bottom(u))};
    }
    const double s = bottom_map_->invert(std::max(0.0, half_length_ - xi));
    const double u = bottom_ - dir_ * s * s;
    return {u, dir_ * speed_near(s, u, e_bottom_, -dir_, rest_bottom(u))};
  }

 private:
  static constexpr double kTailSpan = 60.0;

  double denominator(double u) const { return singular_denominator_ ? 14.0 : ode_.d(u); }

  // V^2 / (U - T)^eT and V^2 / (U - B)^eB.
  double rest_top(double u) const { return ipow(u - bottom_, e_bottom_) * reduced_(u) / denominator(u); }
  double rest_bottom(double u) const { return ipow(u - top_, e_top_) * reduced_(u) / denominator(u); }

  // |V| with U - end = sign * s^2.
  static double speed_near(double s, double u, int e, double sign, double rest) {
    (void)u;
    const double scaled = (e == 0 ? 1.0 : sign) * rest;
    return ipow(s, e) * std::sqrt(scaled);
  }

  // dxi/ds = 2 s^{1-e} / sqrt(sign^e rest).
  static double integrand_near(double s, int e, double sign, double rest) {
    const double scaled = (e == 0 ? 1.0 : sign) * rest;
    return 2.0 * ipow(s, 1 - e) / std::sqrt(scaled);
  }

  double top_integrand(double s) const {
    const double u = top_ + dir_ * s * s;
    return integrand_near(s, e_top_, dir_, rest_top(u));
  }

  double bottom_integrand(double s) const {
    const double u = bottom_ - dir_ * s * s;
    return integrand_near(s, e_bottom_, -dir_, rest_bottom(u));
  }

  double tail_integrand(double w) const {
    const double u = bottom_ + (mid_ - bottom_) * std::exp(-w);
    return 1.0 / std::sqrt(rest_bottom(u));
  }

  ProfileOde ode_;
  double top_;
  double bottom_;
  EndKind top_kind_;
  EndKind bottom_kind_;
  double dir_ = 1.0;
  double mid_ = 0.0;
  Polynomial reduced_;
  bool singular_denominator_ = false;
  int e_top_ = 1;
  int e_bottom_ = 1;
  std::optional<quadrature::MonotoneMap> top_map_;
  std::optional<quadrature::MonotoneMap> bottom_map_;
  double half_length_ = 0.0;
};

class SolitaryShape final : public ProfileShape {
 public:
  explicit SolitaryShape(std::unique_ptr<Branch> b) : branch_(std::move(b)) {}
  PhasePoint at(double xi) const override {
    const PhasePoint p = branch_->at(std::abs(xi));
    return {p.elevation, xi >= 0.0 ? p.slope : -p.slope};
  }

 private:
  std::unique_ptr<Branch> branch_;
};

// One period: bottom end at xi = 0, top (crest) at half a period.
class ArchShape final : public ProfileShape {
 public:
  explicit ArchShape(std::unique_ptr<Branch> b) : branch_(std::move(b)), half_(branch_->half_length()) {}
  PhasePoint at(double xi) const override {
    const double period = 2.0 * half_;
    double z = std::fmod(xi, period);
    if (z < 0.0) z += period;
    if (z <= half_) {
      const PhasePoint p = branch_->at(half_ - z);
      return {p.elevation, -p.slope};
    }
    return branch_->at(z - half_);
  }
  double half() const { return half_; }

 private:
  std::unique_ptr<Branch> branch_;
  double half_;
};

class MirroredShape final : public ProfileShape {
 public:
  MirroredShape(std::shared_ptr<const ProfileShape> inner, double pivot) : inner_(std::move(inner)), pivot_(pivot) {}
  PhasePoint at(double xi) const override {
    const PhasePoint p = inner_->at(pivot_ - xi);
    return {p.elevation, -p.slope};
  }

 private:
  std::shared_ptr<const ProfileShape> inner_;
  double pivot_;
};

struct Piece {
  std::shared_ptr<const ProfileShape> shape;
  double origin;  // window start in the piece's own coordinate
  double length;
};

class CompositeShape final : public ProfileShape {
 public:
  explicit CompositeShape(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    double acc = 0.0;
    for (const Piece& p : pieces_) {
      offsets_.push_back(acc);
      acc += p.length;
    }
    total_ = acc;
  }
  PhasePoint at(double xi) const override {
    double z = std::fmod(xi, total_);
    if (z < 0.0) z += total_;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), z) - offsets_.begin());
    k = k == 0 ? 0 : k - 1;
    const Piece& p = pieces_[k];
    return p.shape->at(p.origin + (z - offsets_[k]));
  }

 private:
  std::vector<Piece> pieces_;
  std::vector<double> offsets_;
  double total_ = 0.0;
};

void fill_samples(TWProfile& prof, int n, double h, double window_start, double offset) {
  prof.xi.resize(n);
  prof.values.resize(n);
  prof.slopes.resize(n);
  prof.window_start = window_start;
  prof.sample_offset = offset;
  for (int j = 0; j < n; ++j) {
    const double x = window_start + (j + offset) * h;
    const PhasePoint p = prof.shape->at(x);
    prof.xi[j] = x;
    prof.values[j] = p.elevation;
    prof.slopes[j] = p.slope;
  }
}

bool near_value(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

// |E - 2G(U_s)| below this (relative to the level's magnitude) counts as the
// orbit touching the singular line with a finite limiting slope, i.e. a peak.
constexpr double kContactTolerance = 1e-10;

bool on_level(const ProfileOde& ode, double u) {
  return std::abs(ode.level(u)) <= kContactTolerance * std::max(1.0, ode.level.magnitude(u));
}

struct Interval {
  double top;
  EndKind top_kind;
  double bottom;
  EndKind bottom_kind;
  Regularity regularity;
};

std::vector<Interval> bounded_orbits(const TWParams& params) {
  const ProfileOde ode(params);
  const double us = singular_line(params);
  struct Knot {
    double u;
    bool root;
    bool tangency;
    bool singular;
  };
  std::vector<Knot> knots;
  for (const TurningPoint& t : turning_points(params)) knots.push_back({t.value, true, t.tangency, false});
  bool merged = false;
  for (Knot& k : knots) {
    if (near_value(k.u, us) || (std::abs(k.u - us) < 1e-7 && on_level(ode, us))) {
      k.u = us;
      k.singular = true;
      merged = true;
    }
  }
  if (!merged && us > -10.0 && us < 10.0) knots.push_back({us, on_level(ode, us), false, true});
  std::sort(knots.begin(), knots.end(), [](const Knot& a, const Knot& b) { return a.u < b.u; });

  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Knot& lo = knots[i];
    const Knot& hi = knots[i + 1];
    if (lo.tangency || hi.tangency) continue;
    const double mid = 0.5 * (lo.u + hi.u);
    if (!(ode.level(mid) / ode.d(mid) > 0.0)) continue;
    if (lo.singular && hi.singular) continue;
    auto kind = [&](const Knot& k) {
      if (!k.singular) return EndKind::Turning;
      return k.root ? EndKind::SingularFinite : EndKind::SingularCusp;
    };
    if (!lo.singular && !lo.root) continue;
    if (!hi.singular && !hi.root) continue;
    // A finite-slope contact needs 7V^2 = -F(U_s) > 0.
    const Knot& sing = lo.singular ? lo : hi;
    if ((lo.singular || hi.singular) && sing.root && !(ode.f(sing.u) < 0.0)) continue;
    Interval iv;
    if (lo.singular) {
      iv = {hi.u, EndKind::Turning, lo.u, kind(lo), Regularity::SmoothPeriodic};
    } else {
      iv = {hi.u, EndKind::Turning, lo.u, kind(lo), Regularity::SmoothPeriodic};
      if (hi.singular) iv = {lo.u, EndKind::Turning, hi.u, kind(hi), Regularity::SmoothPeriodic};
    }
    if (iv.bottom_kind == EndKind::SingularFinite) iv.regularity = Regularity::Peaked;
    if (iv.bottom_kind == EndKind::SingularCusp) iv.regularity = Regularity::Cusped;
    out.push_back(iv);
  }
  return out;
}

Interval select_orbit(const TWParams& params, std::optional<double> near) {
  const std::vector<Interval> orbits = bounded_orbits(params);
  if (orbits.empty()) {
    std::ostringstream msg;
    msg << "no bounded orbit at level E = " << params.energy << " (c = " << params.speed
        << ", A = " << params.integration_constant << ")";
    throw Error(ErrorKind::Nonexistence, msg.str());
  }
  if (near) {
    for (const Interval& iv : orbits) {
      if (*near >= std::min(iv.top, iv.bottom) && *near <= std::max(iv.top, iv.bottom)) return iv;
    }
    std::ostringstream msg;
    msg << "no bounded orbit through elevation " << *near << " at level E = " << params.energy;
    throw Error(ErrorKind::Nonexistence, msg.str());
  }
  for (Regularity want : {Regularity::SmoothPeriodic, Regularity::Peaked, Regularity::Cusped}) {
    for (const Interval& iv : orbits) {
      if (iv.regularity == want) return iv;
    }
  }
  return orbits.front();
}

}  // namespace

TWProfile solitary_profile(double speed, const SolitarySampling& sampling) {
  if (sampling.n_points < 16 || !(sampling.spacing > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "solitary sampling needs >= 16 points and positive spacing");
  }
  const TWParams params{speed, 0.0, 0.0};
  const ProfileOde ode(params);
  const double ratio = ode.f.derivative()(0.0) / ode.d(0.0);
  if (!(ratio < 0.0)) {
    std::ostringstream msg;
    msg << "origin is not a saddle for c = " << speed << " (F'(0)/D(0) = " << ratio << " >= 0)";
    throw Error(ErrorKind::Nonexistence, msg.str());
  }
  const double us = singular_line(params);
  const std::vector<TurningPoint> roots = turning_points(params);

  std::optional<std::pair<double, EndKind>> top;
  Regularity regularity = Regularity::SmoothSolitary;
  std::string obstruction;
  for (double side : {1.0, -1.0}) {
    std::optional<double> root;
    for (const TurningPoint& t : roots) {
      if (side * t.value <= 1e-12) continue;
      if (!root || side * t.value < side * *root) root = t.value;
    }
    const bool singular_ahead = side * us > 0.0;
    if (root && (!singular_ahead || side * *root < side * us - 1e-9)) {
      const bool tangent = std::any_of(roots.begin(), roots.end(),
                                       [&](const TurningPoint& t) { return t.value == *root && t.tangency; });
      if (tangent) {
        obstruction = "level set reaches another equilibrium (heteroclinic, not homoclinic)";
        continue;
      }
      top = {*root, EndKind::Turning};
      break;
    }
    if (singular_ahead) {
      if (on_level(ode, us)) {
        if (!(ode.f(us) < 0.0)) {
          obstruction = "orbit touches the singular line with 7V^2 = -F(U_s) <= 0";
          continue;
        }
        top = {us, EndKind::SingularFinite};
        regularity = Regularity::Peaked;
      } else {
        top = {us, EndKind::SingularCusp};
        regularity = Regularity::Cusped;
      }
      break;
    }
    if (obstruction.empty()) obstruction = "no turning point on either side of the origin";
  }
  if (!top) {
    throw Error(ErrorKind::Nonexistence, "no homoclinic orbit for c = " + std::to_string(speed) + ": " + obstruction);
  }

  TWProfile prof;
  prof.params = params;
  prof.regularity = regularity;
  prof.shape = std::make_shared<SolitaryShape>(
      std::make_unique<Branch>(params, top->first, top->second, 0.0, EndKind::Saddle));
  const int n = sampling.n_points;
  fill_samples(prof, n, sampling.spacing, -(n / 2) * sampling.spacing, 0.0);
  return prof;
}

double half_period(const TWParams& params, std::optional<double> near) {
  const Interval iv = select_orbit(params, near);
  return Branch(params, iv.top, iv.top_kind, iv.bottom, iv.bottom_kind).half_length();
}

TWProfile periodic_profile(const TWParams& params, const PeriodicSampling& sampling, std::optional<double> near) {
  if (sampling.points_per_period < 8 || sampling.periods < 1) {
    throw Error(ErrorKind::InvalidArgument, "periodic sampling needs >= 8 points per period");
  }
  const Interval iv = select_orbit(params, near);
  auto arch = std::make_shared<ArchShape>(
      std::make_unique<Branch>(params, iv.top, iv.top_kind, iv.bottom, iv.bottom_kind));
  TWProfile prof;
  prof.params = params;
  prof.regularity = iv.regularity;
  prof.period = 2.0 * arch->half();
  prof.shape = arch;
  const double h = *prof.period / sampling.points_per_period;
  fill_samples(prof, sampling.points_per_period * sampling.periods, h, 0.0, sampling.offset);
  return prof;
}

TWProfile mirror(const TWProfile& profile) {
  TWProfile out = profile;
  const double pivot = 2.0 * profile.window_start + profile.window_length();
  out.shape = std::make_shared<MirroredShape>(profile.shape, pivot);
  fill_samples(out, static_cast<int>(profile.xi.size()), profile.spacing(), profile.window_start,
               profile.sample_offset);
  return out;
}

TWProfile concatenate_segments(std::span<const TWProfile> segments) {
  if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "no segments to compose");
  std::vector<Piece> pieces;
  double total = 0.0;
  int n_total = 0;
  bool uniform = true;
  const double h0 = segments.front().spacing();
  for (const TWProfile& s : segments) {
    if (!s.shape || s.xi.size() < 2) throw Error(ErrorKind::InvalidArgument, "segment has no samples");
    pieces.push_back({s.shape, s.window_start, s.window_length()});
    total += s.window_length();
    n_total += static_cast<int>(s.xi.size());
    if (std::abs(s.spacing() - h0) > 1e-12 * h0 || s.sample_offset != segments.front().sample_offset) {
      uniform = false;
    }
  }
  for (std::size_t k = 0; k + 1 < segments.size(); ++k) {
    const TWProfile& a = segments[k];
    const TWProfile& b = segments[k + 1];
    const double ua = a.shape->at(a.window_start + a.window_length()).elevation;
    const double ub = b.shape->at(b.window_start).elevation;
    if (std::abs(ua - ub) > 1e-8 * std::max(1.0, std::abs(ua))) {
      std::ostringstream msg;
      msg << "segments " << k << " and " << k + 1 << " do not join continuously (U = " << ua << " vs " << ub << ")";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
  const int n = uniform ? n_total : std::max(16, static_cast<int>(std::lround(total / h0)));
  TWProfile out;
  out.params = segments.front().params;
  out.regularity = Regularity::Composite;
  out.period = total;
  out.shape = std::make_shared<CompositeShape>(std::move(pieces));
  fill_samples(out, n, total / n, 0.0, segments.front().sample_offset);
  return out;
}

TWProfile compose_segments(std::span<const TWProfile> segments, const TWParams& params) {
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const TWParams& p = segments[k].params;
    const double de = std::abs(p.energy - params.energy);
    if (std::abs(p.speed - params.speed) > 1e-10 || std::abs(p.integration_constant - params.integration_constant) > 1e-10) {
      throw Error(ErrorKind::InvalidArgument, "segment " + std::to_string(k) + " has different (c, A)");
    }
    if (de > 1e-10) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "segment " << k << " lies on a different level set, |dE| = " << de;
      throw Error(ErrorKind::EnergyMismatch, msg.str());
    }
  }
  TWProfile out = concatenate_segments(segments);
  out.params = params;
  double junction = 0.0;
  for (const TWProfile& s : segments) {
    const double defect = evenness_defect(out, junction);
    if (defect > 1e-8) {
      std::ostringstream msg;
      msg << "same-level composite is not even about its junction at xi = " << junction << " (defect " << defect << ")";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
    junction += s.window_length();
  }
  return out;
}

double evenness_defect(const TWProfile& profile, double center) {
  double worst = 0.0;
  for (double x : profile.xi) {
    const double s = x - center;
    const double a = profile.shape->at(center + s).elevation;
    const double b = profile.shape->at(center - s).elevation;
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

TWProfile resample(const TWProfile& profile, int n_points, double offset) {
  TWProfile out = profile;
  fill_samples(out, n_points, profile.window_length() / n_points, profile.window_start, offset);
  return out;
}

}  // namespace mase
