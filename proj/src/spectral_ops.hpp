#pragma once

#include "snls/torus.hpp"

#include <vector>

namespace snls::detail {

// Operations on full-length spectra (N = grid.samples(), FFT index order).
// Every quantity the maps need has support in |k| <= 3K, and N >= 4K+1, so
// frequencies that can reach the retained modes never alias.
using FullSpectrum = std::vector<Complex>;

int signed_frequency(int index, int n) noexcept;

FullSpectrum embed(const SpectralField& f);
SpectralField truncate(const FullSpectrum& a, const TorusGrid& grid);

/// Spectrum of the pointwise product of the two represented functions.
FullSpectrum product(const FullSpectrum& a, const FullSpectrum& b);
/// Spectrum of the complex conjugate function.
FullSpectrum conjugate(const FullSpectrum& a);
/// Multiplies frequency k by e^{-i t k^2}.
FullSpectrum propagate(const FullSpectrum& a, double t);
/// Multiplies frequency k != 0 by 1/(ik), zeroes k = 0.
FullSpectrum inverse_derivative(const FullSpectrum& a);

} // namespace snls::detail
