#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mase/grid.hpp"

/// Fourier-collocation machinery on the periodic grid. Real transforms are
/// backed by FFTW; plans are cached per size behind a mutex so every function
/// here can be called concurrently.
namespace mase::spectral {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalized real-to-complex transform, n/2+1 bins.
Spectrum forward(std::span<const double> values);
/// Inverse of forward() including the 1/n normalization.
std::vector<double> inverse(const Spectrum& coeffs, int n);

/// d^order u / dx^order, order in {1,2,3}. Odd orders drop the Nyquist bin.
Field derivative(const Field& u, int order);

/// Solves (1 - d^2/dx^2) P = f with the multiplier 1/(1+k^2).
Field helmholtz_inverse(const Field& f);

/// 2/3-rule truncation: zeroes every bin with index m > n/3.
Field dealias(const Field& f);

/// Band-limited translate x -> u(x - s).
Field shift(const Field& u, double s);

/// Band-limited reflection x -> u(2*axis - x).
Field reflect(const Field& u, double axis);

/// Band-limited interpolant of u evaluated at an arbitrary x.
double evaluate(const Field& u, double x);

}  // namespace mase::spectral
