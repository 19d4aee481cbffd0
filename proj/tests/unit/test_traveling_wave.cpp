#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <random>

#include "../support/fields.hpp"
#include "mase/error.hpp"
#include "mase/polynomial.hpp"
#include "mase/traveling_wave.hpp"

using namespace mase;

namespace {

// Equilibrium of the c = 1.2, A = 0 family between the origin and the crest.
double centre_equilibrium(const TWParams& p) {
  const ProfileOde ode(p);
  for (const RealRoot& r : isolate_real_roots(ode.f, 0.01, 0.2)) return r.value;
  return std::nan("");
}

double level_at(const TWParams& p, double u) { return 2.0 * ProfileOde(p).g(u); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

}  // namespace

TEST(FirstIntegral, EvenInSlopeExactly) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    const TWParams p{fixtures::uniform(rng, -3, 3), fixtures::uniform(rng, -1, 1), 0.0};
    const double u = fixtures::uniform(rng, -2, 2), v = fixtures::uniform(rng, -5, 5);
    ASSERT_EQ(first_integral({u, v}, p), first_integral({u, -v}, p));
  }
  EXPECT_EQ(first_integral({0.0, 0.0}, {1.2, 0.0, 0.0}), 0.0);
}

TEST(PlanarField, EquilibriumAndSingularity) {
  const TWParams p{1.2, 0.0, 0.0};
  const PhasePoint f0 = planar_field({0.0, 0.0}, p);
  EXPECT_EQ(f0.elevation, 0.0);
  EXPECT_EQ(f0.slope, 0.0);
  EXPECT_EQ(planar_field({0.05, 0.0}, p).elevation, 0.0);
  EXPECT_EQ(kind_of([&] { planar_field({singular_line(p), 0.1}, p); }), ErrorKind::Singularity);
}

TEST(SingularLine, ZeroesCoefficient) {
  EXPECT_EQ(singular_line({-1.0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(singular_line({13.0, 0, 0}), -1.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const TWParams p{fixtures::uniform(rng, -20, 20), 0, 0};
    EXPECT_LT(std::abs(singular_coefficient(singular_line(p), p)), 1e-14);
  }
}

TEST(TurningPoints, OriginTangencyAndResubstitution) {
  const TWParams zero{1.2, 0.0, 0.0};
  bool has_origin = false;
  for (const TurningPoint& t : turning_points(zero)) has_origin = has_origin || std::abs(t.value) < 1e-12;
  EXPECT_TRUE(has_origin);

  TWParams centre{1.2, 0.0, 0.0};
  const double uc = centre_equilibrium(centre);
  centre.energy = level_at(centre, uc);
  bool tangent = false;
  for (const TurningPoint& t : turning_points(centre)) {
    if (std::abs(t.value - uc) < 1e-6) tangent = t.tangency;
  }
  EXPECT_TRUE(tangent);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const TWParams p{fixtures::uniform(rng, -2, 3), fixtures::uniform(rng, -0.1, 0.1), fixtures::uniform(rng, -0.1, 0.1)};
    const ProfileOde ode(p);
    for (const TurningPoint& t : turning_points(p)) {
      if (!t.tangency) EXPECT_LT(std::abs(ode.level(t.value)), 1e-10);
    }
  }
}

TEST(FirstIntegral, ConservedAlongIntegratedOrbit) {
  using Vec = std::array<double, 2>;
  const TWParams p{1.2, 0.0, 0.0};
  const double uc = centre_equilibrium(p);
  Vec y{uc + 0.02, 0.0};
  const double h0 = first_integral({y[0], y[1]}, p);
  boost::numeric::odeint::runge_kutta4<Vec> rk;
  auto sys = [&](const Vec& s, Vec& d, double) {
    const PhasePoint f = planar_field({s[0], s[1]}, p);
    d = {f.elevation, f.slope};
  };
  for (int i = 0; i < 1000; ++i) rk.do_step(sys, y, 0.0, 1e-4);
  EXPECT_LT(std::abs(first_integral({y[0], y[1]}, p) - h0) / std::max(1.0, std::abs(h0)), 1e-8);
}

TEST(Solitary, CrestEvennessAndDecay) {
  const TWProfile p = solitary_profile(1.2, {0.1, 2048});
  EXPECT_EQ(p.regularity, Regularity::SmoothSolitary);
  const std::size_t n = p.values.size();
  EXPECT_EQ(p.xi[n / 2], 0.0);
  const double crest = p.values[n / 2];
  EXPECT_NEAR(crest, 0.1048, 1e-4);
  const ProfileOde ode(p.params);
  EXPECT_LT(std::abs(ode.level(crest)), 1e-12);
  EXPECT_LT(evenness_defect(p, 0.0), 1e-8);
  EXPECT_LT(std::abs(p.values.front()), 1e-6 * crest);
  EXPECT_LT(std::abs(p.values.back()), 1e-6 * crest);
  for (double v : p.values) EXPECT_LE(v, crest);
}

TEST(Solitary, FiniteDifferenceFirstIntegralAndOdeResidual) {
  const TWProfile p = solitary_profile(1.2, {0.05, 4096});
  const double h = p.spacing();
  const ProfileOde ode(p.params);
  double worst_h = 0.0, worst_ode = 0.0;
  for (std::size_t j = 2; j + 2 < p.values.size(); ++j) {
    const double* u = &p.values[j];
    const double v = (u[-2] - 8 * u[-1] + 8 * u[1] - u[2]) / (12 * h);
    const double upp = (-u[-2] + 16 * u[-1] - 30 * u[0] + 16 * u[1] - u[2]) / (12 * h * h);
    worst_h = std::max(worst_h, std::abs(first_integral({u[0], v}, p.params)));
    worst_ode = std::max(worst_ode, std::abs(ode.d(u[0]) * upp + 7 * v * v + ode.f(u[0])));
    EXPECT_NEAR(v, p.slopes[j], 1e-6);
  }
  EXPECT_LT(worst_h, 1e-4);
  EXPECT_LT(worst_ode, 1e-4);
}

TEST(Solitary, RequiresSaddleAtOrigin) {
  EXPECT_EQ(kind_of([] { solitary_profile(0.5, {}); }), ErrorKind::Nonexistence);
}

class PeriodicFamily : public ::testing::Test {
 protected:
  void SetUp() override {
    params = {1.2, 0.0, 0.0};
    const double uc = centre_equilibrium(params);
    params.energy = 0.5 * level_at(params, uc);  // between the centre level and the separatrix
    const auto tps = turning_points(params);
    for (std::size_t i = 0; i + 1 < tps.size(); ++i) {
      if (tps[i].value < uc && tps[i + 1].value > uc) {
        lo = tps[i].value;
        hi = tps[i + 1].value;
      }
    }
  }
  TWParams params;
  double lo = 0.0, hi = 0.0;
};

TEST_F(PeriodicFamily, AttainsTurningPointsAndRepeats) {
  const int ppp = 256;
  const TWProfile p = periodic_profile(params, {ppp, 0.0, 2});
  EXPECT_EQ(p.regularity, Regularity::SmoothPeriodic);
  ASSERT_TRUE(p.period.has_value());
  EXPECT_NEAR(p.values[0], lo, 1e-8);
  EXPECT_NEAR(p.values[ppp / 2], hi, 1e-8);
  for (int j = 0; j < ppp; ++j) EXPECT_NEAR(p.values[j], p.values[j + ppp], 1e-8);
  EXPECT_LT(evenness_defect(p, p.xi[0]), 1e-8);
  EXPECT_LT(evenness_defect(p, p.xi[ppp / 2]), 1e-8);
}

TEST_F(PeriodicFamily, HalfPeriodMatchesTanhSinhOracle) {
  const ProfileOde ode(params);
  // Factor the simple roots out of E - 2G and use the endpoint distances
  // tanh_sinh supplies, so V^2 keeps full relative precision near the ends.
  const Polynomial rest = ode.level.deflate(lo).first.deflate(hi).first;
  auto integrand = [&](double u, double uc) {
    const double dlo = uc < 0.0 ? -uc : u - lo;
    const double dhi = uc > 0.0 ? uc : hi - u;
    return 1.0 / std::sqrt(-dlo * dhi * rest(u) / ode.d(u));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double oracle = ts.integrate(integrand, lo, hi, 1e-14);
  EXPECT_NEAR(half_period(params), oracle, 1e-10);
  const TWProfile p = periodic_profile(params, {128, 0.5, 1});
  EXPECT_NEAR(*p.period, 2.0 * half_period(params), 1e-10);
}

TEST_F(PeriodicFamily, ComposeWithMirrorIsIdempotent) {
  const TWProfile one = periodic_profile(params, {128, 0.5, 1});
  const std::vector<TWProfile> parts{one, mirror(one)};
  const TWProfile composite = compose_segments(parts, params);
  const TWProfile two = periodic_profile(params, {128, 0.5, 2});
  ASSERT_EQ(composite.values.size(), two.values.size());
  for (std::size_t j = 0; j < two.values.size(); ++j) EXPECT_NEAR(composite.values[j], two.values[j], 1e-10);
}

// Off the singular level, E - 2G and D change sign together only at a root,
// so a deep level still carries a cusped arch; nonexistence shows up when the
// requested elevation lies on no bounded orbit.
TEST(Periodic, DeepLevelIsCuspedAndRemoteElevationIsNonexistence) {
  const TWParams deep{1.2, 0.0, -100.0};
  EXPECT_EQ(periodic_profile(deep, {}).regularity, Regularity::Cusped);
  EXPECT_EQ(kind_of([&] { periodic_profile(deep, {}, 5.0); }), ErrorKind::Nonexistence);
}

class SingularFamily : public ::testing::Test {
 protected:
  TWParams peaked{-0.5, 0.0, 0.0};
  void SetUp() override { peaked.energy = level_at(peaked, singular_line(peaked)); }
};

TEST_F(SingularFamily, PeakedSlopeAtJunction) {
  const TWProfile p = periodic_profile(peaked, {512, 0.5, 1}, 0.0);
  EXPECT_EQ(p.regularity, Regularity::Peaked);
  const double us = singular_line(peaked);
  const double expected = std::sqrt(-ProfileOde(peaked).f(us) / 7.0);
  const PhasePoint at_junction = p.shape->at(1e-9);
  EXPECT_NEAR(at_junction.elevation, us, 1e-8);
  EXPECT_NEAR(std::abs(at_junction.slope), expected, 1e-4);
  EXPECT_LT(evenness_defect(p, p.window_start + 0.5 * *p.period), 1e-8);
}

TEST_F(SingularFamily, RaisedLevelIsCusped) {
  const TWParams cusp{peaked.speed, 0.0, peaked.energy + 1e-4};
  const TWProfile p = periodic_profile(cusp, {512, 0.5, 1}, 0.0);
  EXPECT_EQ(p.regularity, Regularity::Cusped);
  EXPECT_GT(std::abs(p.shape->at(1e-10).slope), 10.0);
}

TEST_F(SingularFamily, ComposeChecksEnergy) {
  const TWProfile a = periodic_profile(peaked, {256, 0.5, 1}, 0.0);
  const std::vector<TWProfile> same{a, a};
  const TWProfile c = compose_segments(same, peaked);
  EXPECT_EQ(c.regularity, Regularity::Composite);
  EXPECT_LT(evenness_defect(c, c.window_start + *a.period), 1e-8);

  const TWParams other{peaked.speed, 0.0, peaked.energy + 1e-5};
  const TWProfile b = periodic_profile(other, {256, 0.5, 1}, 0.0);
  const std::vector<TWProfile> mixed{a, b};
  try {
    (void)compose_segments(mixed, peaked);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnergyMismatch);
    EXPECT_NE(e.detail().find("|dE|"), std::string::npos);
  }
  EXPECT_NO_THROW(concatenate_segments(mixed));
}

TEST(Regularity, StringRoundTrip) {
  for (Regularity r : {Regularity::SmoothSolitary, Regularity::SmoothPeriodic, Regularity::Peaked, Regularity::Cusped,
                       Regularity::Composite}) {
    EXPECT_EQ(regularity_from_string(to_string(r)), r);
  }
  EXPECT_THROW(regularity_from_string("wobbly"), Error);
}
