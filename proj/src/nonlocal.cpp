#include "mase/nonlocal.hpp"

#include <complex>
#include <vector>

#include "mase/kernels.hpp"
#include "mase/spectral.hpp"

namespace mase {
namespace {

// 10u^2 - 2u^3 + 3u^4 - 7u_x^2, dealiased as a whole.
Field reaction_nonlinear(const Field& u, const Field& ux) {
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double a = u[j];
    const double a2 = a * a;
    v[j] = 10.0 * a2 - 2.0 * a2 * a + 3.0 * a2 * a2 - 7.0 * ux[j] * ux[j];
  }
  return spectral::dealias(Field(u.grid(), std::move(v)));
}

Field square(const Field& u) {
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = u[j] * u[j];
  return Field(u.grid(), std::move(v));
}

// Central differences on the periodic grid, used by the kernel quadrature so
// that it stays independent of the FFT path.
std::vector<double> second_difference(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = (f[(j + 1) % n] - 2.0 * f[j] + f[(j + n - 1) % n]) / (h * h);
  }
  return d;
}

}  // namespace

Field reaction_term(const Field& u) {
  const Field ux = spectral::derivative(u, 1);
  return 2.0 * u + reaction_nonlinear(u, ux);
}

Field kernel_convolve(const Field& f) {
  const Grid& g = f.grid();
  const double h = g.spacing();
  const std::vector<double> table = kernels::periodic_kernel_table(g);
  std::vector<double> out(f.size());
  kernels::circular_convolve_omp(table, f.values(), h, out);

  // Euler-Maclaurin: the kernel's odd one-sided derivatives jump by -1 at the
  // origin, which leaves end terms B_2k h^2k/(2k)! * sum_{odd r} C(2k-1, r) f^(2k-1-r).
  const std::vector<double> f2 = second_difference(f.values(), h);
  const std::vector<double> f4 = second_difference(f2, h);
  const double h2 = h * h;
  const double h4 = h2 * h2;
  const double h6 = h4 * h2;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += -h2 / 12.0 * f[i] + h4 / 720.0 * (3.0 * f2[i] + f[i]) -
              h6 / 30240.0 * (5.0 * f4[i] + 10.0 * f2[i] + f[i]);
  }
  return Field(g, std::move(out));
}

Field evolution_rhs(const Field& u) {
  const Grid& g = u.grid();
  const int n = g.n_points();
  const Field flux = u + spectral::dealias(7.0 * square(u));
  const Field r = reaction_term(u);
  spectral::Spectrum fc = spectral::forward(flux.values());
  const spectral::Spectrum rc = spectral::forward(r.values());
  for (int m = 0; m <= n / 2; ++m) {
    const double k = g.wavenumber(m);
    fc[m] = std::complex<double>(0.0, k) * (fc[m] - rc[m] / (1.0 + k * k));
  }
  if (n % 2 == 0) fc[n / 2] = 0.0;
  return Field(g, spectral::inverse(fc, n));
}

Field evolution_rhs(const State& s) { return evolution_rhs(s.u); }

Field nonlocal_form_residual(const Field& u, const Field& ut) {
  require_same_grid(u, ut);
  return ut - evolution_rhs(u);
}

Field helmholtz_apply(const Field& f) { return f - spectral::derivative(f, 2); }

Field local_form_residual(const Field& u, const Field& ut) {
  require_same_grid(u, ut);
  const Field ux = spectral::derivative(u, 1);
  const Field uxx = spectral::derivative(u, 2);
  const Field uxxx = spectral::derivative(u, 3);
  const Field utxx = spectral::derivative(ut, 2);
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double a = u[j];
    const double a2 = a * a;
    v[j] = ut[j] + ux[j] + 6.0 * a * ux[j] - 6.0 * a2 * ux[j] + 12.0 * a2 * a * ux[j] + uxxx[j] - utxx[j] +
           14.0 * a * uxxx[j] + 28.0 * ux[j] * uxx[j];
  }
  return Field(u.grid(), std::move(v));
}

}  // namespace mase
