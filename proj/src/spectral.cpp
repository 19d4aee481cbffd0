#include "mase/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "mase/error.hpp"

namespace mase::spectral {
namespace {

struct PlanPair {
  fftw_plan r2c;
  fftw_plan c2r;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

  PlanPair get(int n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_r2c_1d(n, real.data(), c, flags), fftw_plan_dft_c2r_1d(n, c, real.data(), flags)};
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

Spectrum forward(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  Spectrum out(n / 2 + 1);
  std::vector<double> in(values.begin(), values.end());
  fftw_execute_dft_r2c(cache().get(n).r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse(const Spectrum& coeffs, int n) {
  Spectrum scratch(coeffs);  // c2r destroys its input
  std::vector<double> out(n);
  fftw_execute_dft_c2r(cache().get(n).c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / n;
  for (double& v : out) v *= scale;
  return out;
}

Field derivative(const Field& u, int order) {
  if (order < 1 || order > 3) {
    throw Error(ErrorKind::InvalidArgument, "derivative order must be 1, 2 or 3, got " + std::to_string(order));
  }
  const Grid& g = u.grid();
  const int n = g.n_points();
  Spectrum c = forward(u.values());
  const std::complex<double> i1(0.0, 1.0);
  for (int m = 0; m <= n / 2; ++m) {
    const double k = g.wavenumber(m);
    std::complex<double> symbol = 1.0;
    for (int p = 0; p < order; ++p) symbol *= i1 * k;
    c[m] *= symbol;
  }
  if (n % 2 == 0 && order % 2 == 1) c[n / 2] = 0.0;
  return Field(g, inverse(c, n));
}

Field helmholtz_inverse(const Field& f) {
  const Grid& g = f.grid();
  const int n = g.n_points();
  Spectrum c = forward(f.values());
  for (int m = 0; m <= n / 2; ++m) {
    const double k = g.wavenumber(m);
    c[m] /= 1.0 + k * k;
  }
  return Field(g, inverse(c, n));
}

Field dealias(const Field& f) {
  const int n = f.grid().n_points();
  Spectrum c = forward(f.values());
  for (int m = n / 3 + 1; m <= n / 2; ++m) c[m] = 0.0;
  return Field(f.grid(), inverse(c, n));
}

Field shift(const Field& u, double s) {
  const Grid& g = u.grid();
  const int n = g.n_points();
  Spectrum c = forward(u.values());
  for (int m = 0; m <= n / 2; ++m) {
    const double k = g.wavenumber(m);
    c[m] *= std::polar(1.0, -k * s);
  }
  if (n % 2 == 0) c[n / 2] = c[n / 2].real() * std::cos(g.wavenumber(n / 2) * s);
  return Field(g, inverse(c, n));
}

Field reflect(const Field& u, double axis) {
  const Grid& g = u.grid();
  const int n = g.n_points();
  Spectrum c = forward(u.values());
  for (int m = 0; m <= n / 2; ++m) {
    const double k = g.wavenumber(m);
    c[m] = std::conj(c[m]) * std::polar(1.0, -2.0 * k * axis);
  }
  if (n % 2 == 0) c[n / 2] = c[n / 2].real() * std::cos(2.0 * g.wavenumber(n / 2) * axis);
  return Field(g, inverse(c, n));
}

double evaluate(const Field& u, double x) {
  const Grid& g = u.grid();
  const int n = g.n_points();
  const Spectrum c = forward(u.values());
  double acc = c[0].real();
  const int top = (n % 2 == 0) ? n / 2 - 1 : n / 2;
  for (int m = 1; m <= top; ++m) {
    acc += 2.0 * (c[m] * std::polar(1.0, g.wavenumber(m) * x)).real();
  }
  if (n % 2 == 0) acc += c[n / 2].real() * std::cos(g.wavenumber(n / 2) * x);
  return acc / n;
}

}  // namespace mase::spectral
