#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <numbers>

#include "../support/fields.hpp"
#include "mase/error.hpp"
#include "mase/kernels.hpp"
#include "mase/spectral.hpp"

using namespace mase;
using mase::fixtures::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Grid, RejectsTooFewPointsAndBadLength) {
  EXPECT_THROW(Grid(8, 1.0), Error);
  EXPECT_THROW(Grid(64, 0.0), Error);
  EXPECT_THROW(Grid(64, std::nan("")), Error);
  const Grid g(48, 7.5);
  EXPECT_NEAR(g.spacing() * g.n_points(), g.length(), 1e-15);
}

TEST(Field, RejectsNonFiniteValues) {
  const Grid g(16, 1.0);
  std::vector<double> v(16, 0.0);
  v[3] = std::numeric_limits<double>::infinity();
  try {
    Field f(g, v);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  EXPECT_THROW(Field(g, std::vector<double>(15, 0.0)), Error);
}

TEST(Field, ArithmeticRequiresSameGrid) {
  const Field a = Field::constant(Grid(16, 1.0), 1.0);
  const Field b = Field::constant(Grid(16, 2.0), 1.0);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
  }
}

TEST(SpectralDerivative, ConstantAndSingleMode) {
  const Grid g(64, 3.0);
  const double k = 2.0 * kPi / g.length();
  EXPECT_LT(spectral::derivative(Field::constant(g, 2.5), 1).max_abs(), 1e-14);
  const Field s = Field::sample(g, [&](double x) { return std::sin(k * x); });
  const Field d1 = spectral::derivative(s, 1);
  const Field d2 = spectral::derivative(s, 2);
  const Field d3 = spectral::derivative(s, 3);
  for (int j = 0; j < g.n_points(); ++j) {
    const double x = g.x(j);
    EXPECT_NEAR(d1[j], k * std::cos(k * x), 1e-12);
    EXPECT_NEAR(d2[j], -k * k * std::sin(k * x), 1e-12);
    EXPECT_NEAR(d3[j], -k * k * k * std::cos(k * x), 1e-10);
  }
  EXPECT_THROW(spectral::derivative(s, 0), Error);
  EXPECT_THROW(spectral::derivative(s, 4), Error);
}

TEST(SpectralDerivative, MatchesAnalyticTrigPolynomial) {
  std::mt19937_64 rng(11);
  const auto p = fixtures::random_trig_poly(rng, 40.0, 20, 1.0, 0.5);
  const Grid g(128, 40.0);
  const Field u = p.sample(g);
  for (int order = 1; order <= 3; ++order) {
    const Field d = spectral::derivative(u, order);
    for (int j = 0; j < g.n_points(); ++j) EXPECT_NEAR(d[j], p.derivative(g.x(j), order), 1e-11);
  }
}

TEST(Helmholtz, ConstantAndCosineMode) {
  const Grid g(32, 10.0);
  const Field c = spectral::helmholtz_inverse(Field::constant(g, 4.0));
  EXPECT_LT(max_abs_diff(c, Field::constant(g, 4.0)), 1e-14);
  for (int m : {1, 3, 7}) {
    const double k = 2.0 * kPi * m / g.length();
    const Field f = Field::sample(g, [&](double x) { return std::cos(k * x); });
    const Field p = spectral::helmholtz_inverse(f);
    for (int j = 0; j < g.n_points(); ++j) EXPECT_NEAR(p[j], std::cos(k * g.x(j)) / (1 + k * k), 1e-14);
  }
}

TEST(Dealias, RemovesUpperThirdOnly) {
  const Grid g(48, 2.0 * kPi);
  const Field low = Field::sample(g, [](double x) { return std::cos(16 * x); });
  const Field high = Field::sample(g, [](double x) { return std::sin(17 * x); });
  EXPECT_LT(max_abs_diff(spectral::dealias(low), low), 1e-13);
  EXPECT_LT(spectral::dealias(high).max_abs(), 1e-13);
}

TEST(ShiftReflect, BandLimitedExactness) {
  std::mt19937_64 rng(5);
  const auto p = fixtures::random_trig_poly(rng, 12.0, 10, 1.0, 1.0);
  const Grid g(64, 12.0);
  const Field u = p.sample(g);
  const double s = 1.2345;
  const Field shifted = spectral::shift(u, s);
  const Field reflected = spectral::reflect(u, 0.777);
  for (int j = 0; j < g.n_points(); ++j) {
    EXPECT_NEAR(shifted[j], p.value(g.x(j) - s), 1e-12);
    EXPECT_NEAR(reflected[j], p.value(2 * 0.777 - g.x(j)), 1e-12);
  }
  EXPECT_NEAR(spectral::evaluate(u, 3.21), p.value(3.21), 1e-12);
  EXPECT_LT(max_abs_diff(spectral::reflect(reflected, 0.777), u), 1e-12);
}

TEST(Kernels, TableMatchesClosedFormPeriodizedKernel) {
  for (double length : {5.0, 40.0}) {
    const Grid g(256, length);
    const auto table = kernels::periodic_kernel_table(g);
    for (int j = 0; j < g.n_points(); ++j) {
      const double s = g.x(j);
      const double exact = std::cosh(s - length / 2) / (2 * std::sinh(length / 2));
      EXPECT_NEAR(table[j], exact, 1e-10 * exact + 1e-15) << "L=" << length << " j=" << j;
    }
  }
  EXPECT_EQ(kernels::kernel_image_count(40.0), 2);
  EXPECT_EQ(kernels::kernel_image_count(5.0), 5);
}

TEST(Kernels, SerialAndParallelAreBitwiseIdentical) {
  std::mt19937_64 rng(2);
  const Grid g(300, 17.0);
  std::vector<double> f(300), v(300);
  for (auto& x : f) x = fixtures::uniform(rng, -1, 1);
  for (auto& x : v) x = fixtures::uniform(rng, -1, 1);
  const auto table = kernels::periodic_kernel_table(g);
  std::vector<double> a(300), b(300), c(300), d(300);
  kernels::circular_convolve_serial(table, f, g.spacing(), a);
  kernels::reflection_scan_serial(v, c);
  for (int threads : {1, 2, 3, 4}) {
    omp_set_num_threads(threads);
    kernels::circular_convolve_omp(table, f, g.spacing(), b);
    kernels::reflection_scan_omp(v, d);
    EXPECT_EQ(a, b) << threads;
    EXPECT_EQ(c, d) << threads;
  }
}

TEST(Kernels, ReflectionScanMatchesDirectDefinition) {
  std::vector<double> v = {0.3, -1.0, 2.0, 0.5, 0.0, 1.5, -0.25, 0.75, 1.0, 2.5, -3.0, 0.125, 0.0, 1.0, 0.5, 0.5};
  const int n = static_cast<int>(v.size());
  std::vector<double> out(n);
  kernels::reflection_scan_serial(v, out);
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = v[j] - v[((s - j) % n + n) % n];
      acc += d * d;
    }
    EXPECT_DOUBLE_EQ(out[s], acc);
  }
}
