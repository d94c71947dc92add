#pragma once

#include <complex>
#include <span>

namespace snls::detail {

// Thin FFTW wrapper. Plans are created once per length and cached; execution
// uses the new-array interface so concurrent calls are safe.

/// out_m = sum_j in_j e^{-2 pi i j m / n} (unnormalised).
void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

/// out_j = sum_m in_m e^{+2 pi i j m / n} (unnormalised).
void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

/// Smallest n >= minimum whose only prime factors are 2, 3 and 5.
int next_fast_size(int minimum);

} // namespace snls::detail
