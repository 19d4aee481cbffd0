#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../support/fields.hpp"
#include "mase/error.hpp"
#include "mase/evolution.hpp"
#include "mase/spectral.hpp"
#include "mase/traveling_wave.hpp"

using namespace mase;
using mase::fixtures::max_abs_diff;

namespace {

Field bump(const Grid& g, double amp, double width) {
  return Field::sample(g, [&](double x) {
    const double d = (x - 0.5 * g.length()) / width;
    return amp * std::exp(-d * d);
  });
}

// Least-squares phase of the single Fourier mode m.
double mode_phase(const Field& u, int m) {
  const auto c = spectral::forward(u.values());
  return std::arg(c[m]);
}

}  // namespace

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt_min = c.dt_max;
  EXPECT_THROW(c.validate(), Error);
  c = SolverConfig{};
  c.snapshot_interval = 2 * c.t_end;
  EXPECT_THROW(c.validate(), Error);
  c = SolverConfig{};
  c.cfl = -1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Step, EquilibriaAreFixedPoints) {
  const Grid g(64, 10.0);
  const State zero = step(State(0.0, Field::zeros(g)), 0.05);
  EXPECT_EQ(zero.u.max_abs(), 0.0);
  EXPECT_DOUBLE_EQ(zero.time, 0.05);
  const State c = step(State(0.0, Field::constant(g, 0.3)), 0.05);
  EXPECT_LT(max_abs_diff(c.u, Field::constant(g, 0.3)), 1e-14);
  EXPECT_THROW(step(State(0.0, Field::zeros(g)), 0.0), Error);
}

TEST(Step, LocalErrorIsFifthOrder) {
  const Grid g(256, 40.0);
  const State s0(0.0, bump(g, 0.1, 2.0));
  auto defect = [&](double dt) {
    const State one = step(s0, dt);
    const State two = step(step(s0, 0.5 * dt), 0.5 * dt);
    return (one.u - two.u).max_abs();
  };
  const double e1 = defect(0.04), e2 = defect(0.02);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 4.5);
  EXPECT_LT(order, 5.5);
}

TEST(Step, NonFiniteStageSignalsIntegrationFailure) {
  const Grid g(64, 10.0);
  const Field huge = Field::sample(g, [](double x) { return 1e80 * std::sin(x); });
  try {
    (void)step(State(0.0, huge), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IntegrationFailure);
  }
}

TEST(StableDt, FollowsCflFormula) {
  const Grid g(100, 10.0);
  SolverConfig c;
  c.dt_max = 1.0;
  const Field u = Field::constant(g, 0.5);
  EXPECT_DOUBLE_EQ(stable_dt(u, c), 0.3 * 0.1 / (1 + 8.0));
  c.dt_max = 1e-3;
  EXPECT_DOUBLE_EQ(stable_dt(u, c), 1e-3);
}

TEST(Evolve, ZeroDataStaysZeroOnSnapshotGrid) {
  const Grid g(64, 10.0);
  SolverConfig c;
  c.t_end = 1.0;
  c.snapshot_interval = 0.25;
  const Trajectory tr = evolve(State(0.0, Field::zeros(g)), c);
  EXPECT_EQ(tr.termination, Termination::Completed);
  ASSERT_EQ(tr.snapshots.size(), 5u);
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    EXPECT_DOUBLE_EQ(tr.snapshots[i].time, 0.25 * static_cast<double>(i));
    EXPECT_EQ(tr.snapshots[i].u.max_abs(), 0.0);
  }
  EXPECT_FALSE(detect_breaking(tr).detected);
}

TEST(Evolve, PreservesMean) {
  const Grid g(256, 40.0);
  SolverConfig c;
  c.t_end = 2.0;
  c.snapshot_interval = 0.5;
  const Field u0 = bump(g, 0.2, 1.5) + Field::constant(g, 0.05);
  const Trajectory tr = evolve(State(0.0, u0), c);
  for (const State& s : tr.snapshots) EXPECT_LT(std::abs(s.u.mean() - u0.mean()), 1e-10 * (1 + s.time));
}

TEST(Evolve, DtFloorTerminatesWithUnderflow) {
  const Grid g(64, 10.0);
  SolverConfig c;
  c.dt_min = 1e-3;
  c.dt_max = 1e-2;
  const Trajectory tr = evolve(State(0.0, Field::constant(g, 50.0)), c);
  EXPECT_EQ(tr.termination, Termination::DtUnderflow);
  EXPECT_EQ(tr.snapshots.size(), 1u);
}

TEST(Evolve, SmallModeTravelsAtLinearPhaseSpeed) {
  // L = 2 pi, mode m = 2: k = 2, speed -3/5.
  const Grid g(64, 2 * std::numbers::pi);
  const double eps = 1e-5;
  const Field u0 = Field::sample(g, [&](double x) { return eps * std::cos(2 * x); });
  SolverConfig c;
  c.t_end = 1.0;
  c.snapshot_interval = 1.0;
  const Trajectory tr = evolve(State(0.0, u0), c);
  const double dphi = mode_phase(tr.snapshots.back().u, 2) - mode_phase(u0, 2);
  const double speed = -dphi / 2.0;  // u ~ cos(k(x - ct)) has phase -k c t
  EXPECT_NEAR(speed, linear_phase_speed(2.0), 1e-3);
}

TEST(LinearPhaseSpeed, ClosedForm) {
  EXPECT_DOUBLE_EQ(linear_phase_speed(0.0), 1.0);
  EXPECT_DOUBLE_EQ(linear_phase_speed(1.0), 0.0);
  EXPECT_DOUBLE_EQ(linear_phase_speed(2.0), -0.6);
}

TEST(DetectBreaking, SolitaryRunDoesNotBreak) {
  const TWProfile p = solitary_profile(1.2, {0.3125, 256});
  const Grid g(256, 80.0);
  SolverConfig c;
  c.t_end = 2.0;
  c.snapshot_interval = 0.5;
  const Trajectory tr = evolve(State(0.0, Field(g, p.values)), c);
  const BreakingReport r = detect_breaking(tr);
  EXPECT_FALSE(r.detected);
  EXPECT_EQ(r.max_slope_history.size(), tr.snapshots.size());
}

TEST(DetectBreaking, RequiresBoundedSupNorm) {
  const Grid g(64, 2 * std::numbers::pi);
  Trajectory tr;
  tr.config.breaking_slope_threshold = 5.0;
  tr.snapshots.emplace_back(0.0, Field::sample(g, [](double x) { return 0.1 * std::sin(x); }));
  tr.snapshots.emplace_back(1.0, Field::sample(g, [](double x) { return 1.0 * std::sin(8 * x); }));
  EXPECT_FALSE(detect_breaking(tr).detected);
  tr.snapshots.emplace_back(2.0, Field::sample(g, [](double x) { return 0.19 * std::sin(30 * x); }));
  const BreakingReport r = detect_breaking(tr);
  EXPECT_TRUE(r.detected);
  EXPECT_DOUBLE_EQ(r.t_detect, 2.0);
  EXPECT_GE(r.max_slope_history.back().second, tr.config.breaking_slope_threshold);
}

TEST(DetectBreaking, EmptyTrajectoryRejected) { EXPECT_THROW(detect_breaking(Trajectory{}), Error); }
