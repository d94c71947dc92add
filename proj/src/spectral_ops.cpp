#include "spectral_ops.hpp"

#include "fft.hpp"

namespace snls::detail {

int signed_frequency(int index, int n) noexcept { return index <= n / 2 ? index : index - n; }

FullSpectrum embed(const SpectralField& f) {
  const TorusGrid& g = f.grid();
  const int n = g.samples();
  FullSpectrum a(static_cast<std::size_t>(n), Complex{});
  const int K = g.mode_cutoff();
  for (int k = -K; k <= K; ++k) a[static_cast<std::size_t>((k + n) % n)] = f[k];
  return a;
}

SpectralField truncate(const FullSpectrum& a, const TorusGrid& grid) {
  const int n = grid.samples();
  const int K = grid.mode_cutoff();
  std::vector<Complex> c(static_cast<std::size_t>(grid.mode_count()));
  for (int k = -K; k <= K; ++k) c[static_cast<std::size_t>(grid.index(k))] = a[static_cast<std::size_t>((k + n) % n)];
  return SpectralField(grid, std::move(c));
}

FullSpectrum product(const FullSpectrum& a, const FullSpectrum& b) {
  const std::size_t n = a.size();
  FullSpectrum pa(n), pb(n), out(n);
  fft_backward(a, pa);
  fft_backward(b, pb);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) pa[j] *= pb[j] * inv_n;
  fft_forward(pa, out);
  return out;
}

FullSpectrum conjugate(const FullSpectrum& a) {
  const std::size_t n = a.size();
  FullSpectrum out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = std::conj(a[(n - m) % n]);
  return out;
}

FullSpectrum propagate(const FullSpectrum& a, double t) {
  const int n = static_cast<int>(a.size());
  FullSpectrum out(a);
  for (int m = 0; m < n; ++m) {
    const double k = signed_frequency(m, n);
    out[static_cast<std::size_t>(m)] *= std::polar(1.0, -t * k * k);
  }
  return out;
}

FullSpectrum inverse_derivative(const FullSpectrum& a) {
  const int n = static_cast<int>(a.size());
  FullSpectrum out(a.size());
  for (int m = 1; m < n; ++m) {
    const double k = signed_frequency(m, n);
    out[static_cast<std::size_t>(m)] = a[static_cast<std::size_t>(m)] / Complex(0.0, k);
  }
  return out;
}

} // namespace snls::detail
