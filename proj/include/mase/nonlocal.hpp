#pragma once

#include "mase/grid.hpp"

/// Spatial operators of the moderate-amplitude shallow-water equation
///
///   u_t - d_x(u + 7u^2) + d_x (1 - d_x^2)^{-1} R(u) = 0,
///   R(u) = 2u + 10u^2 - 2u^3 + 3u^4 - 7u_x^2,
///
/// on a periodic grid. Nonlinear products are 2/3-dealiased.
namespace mase {

Field reaction_term(const Field& u);

/// Direct quadrature of the periodized kernel convolution 1/2 e^{-|x|} * f.
/// Trapezoid sum with Euler-Maclaurin end corrections for the kernel's kink
/// at the origin; shares no code path with spectral::helmholtz_inverse.
Field kernel_convolve(const Field& f);

/// Value of u_t implied by the nonlocal form.
Field evolution_rhs(const State& s);
Field evolution_rhs(const Field& u);

/// u_t - d_x(u + 7u^2) + d_x (1 - d_x^2)^{-1} R(u), for an arbitrary u_t.
Field nonlocal_form_residual(const Field& u, const Field& ut);

/// Left side of the local third-order form
///   u_t + u_x + 6uu_x - 6u^2u_x + 12u^3u_x + u_xxx - u_xxt + 14uu_xxx + 28u_xu_xx,
/// evaluated pointwise from spectral derivatives. A consistency oracle only.
Field local_form_residual(const Field& u, const Field& ut);

/// Applies (1 - d_x^2) spectrally.
Field helmholtz_apply(const Field& f);

}  // namespace mase
