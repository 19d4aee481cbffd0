#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../support/fields.hpp"
#include "mase/error.hpp"
#include "mase/spectral.hpp"
#include "mase/symmetry.hpp"
#include "mase/traveling_wave.hpp"

using namespace mase;
using mase::fixtures::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

Field gaussian(const Grid& g, double center, double width, double amp = 1.0) {
  return Field::sample(g, [&](double x) {
    double d = x - center;
    d -= g.length() * std::round(d / g.length());
    return amp * std::exp(-d * d / (width * width));
  });
}

// Independent oracle: best half-grid axis by direct evaluation of the mismatch.
double brute_force_axis(const Field& u) {
  const int n = u.grid().n_points();
  double best = 1e300;
  int arg = 0;
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = u[j] - u[((s - j) % n + n) % n];
      acc += d * d;
    }
    if (acc < best) {
      best = acc;
      arg = s;
    }
  }
  return 0.5 * arg * u.grid().spacing();
}

double circle_distance(double a, double b, double period) {
  double d = std::fmod(a - b, period);
  if (d < 0) d += period;
  return std::min(d, period - d);
}

Trajectory translate(const Field& u, double speed, int count, double dt) {
  Trajectory tr;
  for (int i = 0; i < count; ++i) tr.snapshots.emplace_back(i * dt, spectral::shift(u, speed * i * dt));
  return tr;
}

}  // namespace

TEST(Reflect, InvolutionAndEvenField) {
  std::mt19937_64 rng(9);
  const Grid g(128, 20.0);
  const Field u = fixtures::random_trig_poly(rng, 20.0, 30, 1.0, 0.3).sample(g);
  for (double axis : {0.0, 1.7, 13.3, -4.2}) EXPECT_LT(max_abs_diff(reflect(reflect(u, axis), axis), u), 1e-10);
  const Field even = gaussian(g, 0.0, 2.0);
  EXPECT_LT(max_abs_diff(reflect(even, 0.0), even), 1e-10);
}

TEST(Reflect, MovesGaussianCenter) {
  const Grid g(256, 40.0);
  const double x0 = 7.3, lambda = 11.05;
  const Field r = reflect(gaussian(g, x0, 1.5), lambda);
  const AxisDetection found = detect_axis(r);
  EXPECT_LT(circle_distance(found.axis, 2 * lambda - x0, 40.0), 1e-6);
}

TEST(DetectAxis, GaussianCenter) {
  const Grid g(256, 40.0);
  const AxisDetection a = detect_axis(gaussian(g, 3.0, 1.2));
  EXPECT_NEAR(a.axis, 3.0, 1e-6);
  EXPECT_LT(a.asymmetry, 1e-10);
  EXPECT_FALSE(a.ambiguous);
}

TEST(DetectAxis, SineModeIsAmbiguousAtQuarterPeriod) {
  const Grid g(128, 10.0);
  const Field s = Field::sample(g, [&](double x) { return std::sin(2 * kPi * x / g.length()); });
  const AxisDetection a = detect_axis(s);
  EXPECT_NEAR(a.axis, 2.5, 1e-8);
  EXPECT_LT(a.asymmetry, 1e-10);
  EXPECT_TRUE(a.ambiguous);
}

TEST(DetectAxis, SkewedProfileAgainstBruteForce) {
  const Grid g(256, 40.0);
  const Field u = gaussian(g, 15.0, 1.0, 1.0) + gaussian(g, 18.0, 2.0, 0.4);
  const AxisDetection a = detect_axis(u);
  EXPECT_GT(a.asymmetry, 0.1);
  EXPECT_LT(circle_distance(a.axis, brute_force_axis(u), 40.0), g.spacing());
  EXPECT_LT(circle_distance(scan_axis(u).axis, brute_force_axis(u), 40.0), 1e-12);
}

TEST(DetectAxis, ConstantFieldUndefined) {
  try {
    (void)detect_axis(Field::constant(Grid(64, 5.0), 2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedAxis);
  }
}

TEST(DetectAxis, TranslationEquivariance) {
  const Grid g(256, 40.0);
  const Field u = gaussian(g, 12.0, 1.4) + gaussian(g, 12.0, 3.0, -0.2);
  const double base = detect_axis(u).axis;
  for (double s : {0.37, 5.5, 31.0}) {
    EXPECT_LT(circle_distance(detect_axis(spectral::shift(u, s)).axis, base + s, 40.0), 1e-6);
  }
}

TEST(DetectAxis, ExactOnSymmetrizedFields) {
  std::mt19937_64 rng(41);
  const Grid g(256, 30.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double lambda0 = fixtures::uniform(rng, 0, 30);
    const Field v = fixtures::random_trig_poly(rng, 30.0, 25, 1.0).sample(g);
    const Field u = v + reflect(v, lambda0);
    const AxisDetection a = detect_axis(u);
    EXPECT_LT(a.asymmetry, 1e-8);
    // Reflections about lambda and lambda + L/2 coincide.
    EXPECT_LT(circle_distance(a.axis, lambda0, 15.0), 1e-6);
  }
}

TEST(TrackAxis, RigidTranslationIsStraightLine) {
  const Grid g(256, 40.0);
  const Trajectory tr = translate(gaussian(g, 35.0, 1.5), 1.3, 21, 0.5);
  const AxisSeries s = track_axis(tr);
  for (std::size_t i = 0; i < s.axes.size(); ++i) {
    EXPECT_NEAR(s.axes[i] - s.axes[0], 1.3 * s.times[i], 1e-6);
  }
}

TEST(TrackAxis, StationaryFieldGivesConstantSeries) {
  const Grid g(128, 20.0);
  const Trajectory tr = translate(gaussian(g, 4.0, 1.0), 0.0, 5, 1.0);
  const AxisSeries s = track_axis(tr);
  for (double a : s.axes) EXPECT_NEAR(a, 4.0, 1e-9);
}

TEST(TrackAxis, PerSnapshotAsymmetryMatchesGridScan) {
  const Grid g(128, 20.0);
  Trajectory tr;
  for (int i = 0; i < 4; ++i) {
    tr.snapshots.emplace_back(i, gaussian(g, 5.0 + i, 1.0) + gaussian(g, 7.0 + 2 * i, 1.5, 0.3));
  }
  const AxisSeries s = track_axis(tr);
  for (std::size_t i = 0; i < s.axes.size(); ++i) {
    EXPECT_LE(s.asymmetry[i], scan_axis(tr.snapshots[i].u).asymmetry + 1e-12);
    EXPECT_GE(s.asymmetry[i], 0.0);
    EXPECT_LE(s.asymmetry[i], 2.0);
  }
}

TEST(TrackAxis, NeedsThreeSnapshots) {
  Trajectory tr;
  tr.snapshots.emplace_back(0.0, Field::constant(Grid(16, 1.0), 1.0));
  EXPECT_THROW(track_axis(tr), Error);
}

TEST(VerifyTheorem, TranslatedSolitaryIsConsistent) {
  const TWProfile p = solitary_profile(1.2, {0.15625, 1024});
  const Trajectory tr = translate(Field(Grid(1024, 160.0), p.values), 1.2, 11, 1.0);
  const SymmetryReport r = verify_theorem(tr);
  EXPECT_EQ(r.verdict, Verdict::TravelingWaveConsistent);
  EXPECT_NEAR(r.speed_estimate, 1.2, 1e-6);
  EXPECT_EQ(r.speed_estimate, r.lambda_dot);
  EXPECT_LT(r.travel_error, 1e-8);
}

TEST(VerifyTheorem, SymmetricButDeformingIsBroken) {
  const Grid g(256, 40.0);
  Trajectory tr;
  for (int i = 0; i < 5; ++i) tr.snapshots.emplace_back(i, gaussian(g, 20.0, 1.0 + 0.2 * i));
  const SymmetryReport r = verify_theorem(tr);
  EXPECT_EQ(r.verdict, Verdict::SymmetryBroken);
  EXPECT_LT(r.max_asymmetry, 1e-10);
}

TEST(VerifyTheorem, ConstantTrajectoryUndefined) {
  Trajectory tr;
  for (int i = 0; i < 3; ++i) tr.snapshots.emplace_back(i, Field::zeros(Grid(64, 10.0)));
  try {
    (void)verify_theorem(tr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedAxis);
  }
}

TEST(Verdict, StringRoundTrip) {
  for (Verdict v : {Verdict::TravelingWaveConsistent, Verdict::SymmetryBroken, Verdict::NotSymmetric}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
}
