#include "snls/torus.hpp"

#include "fft.hpp"
#include "spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace snls {

TorusGrid make_grid(int K) {
  if (K < 1) throw std::invalid_argument("make_grid: mode cutoff must be >= 1, got " + std::to_string(K));
  // ceil(3(2K+1)/2) is the usual 3/2 rule for quadratic products; the cubic
  // product of fields on -K..K needs N >= 4K+1 to keep -K..K alias free.
  const int three_halves = (3 * (2 * K + 1) + 1) / 2;
  const int cubic = 4 * K + 1;
  return TorusGrid(K, detail::next_fast_size(std::max({three_halves, cubic, 2 * K + 2})));
}

SpectralField::SpectralField(const TorusGrid& grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.mode_count()), Complex{}) {}

SpectralField::SpectralField(const TorusGrid& grid, std::vector<Complex> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
  if (static_cast<int>(coeffs_.size()) != grid_.mode_count())
    throw std::invalid_argument("SpectralField: expected " + std::to_string(grid_.mode_count()) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  if (!all_finite()) throw std::invalid_argument("SpectralField: non-finite coefficient");
}

bool SpectralField::all_finite() const noexcept {
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

void SpectralField::require_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("SpectralField: fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

std::vector<Complex> to_physical(const SpectralField& f) {
  const auto spectrum = detail::embed(f);
  std::vector<Complex> samples(spectrum.size());
  detail::fft_backward(spectrum, samples);
  return samples;
}

SpectralField from_physical(std::span<const Complex> samples, const TorusGrid& grid) {
  if (static_cast<int>(samples.size()) != grid.samples())
    throw std::invalid_argument("from_physical: expected " + std::to_string(grid.samples()) + " samples, got " +
                                std::to_string(samples.size()));
  detail::FullSpectrum spectrum(samples.size());
  detail::fft_forward(samples, spectrum);
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (auto& c : spectrum) c *= inv_n;
  return detail::truncate(spectrum, grid);
}

SpectralField free_propagator(const SpectralField& f, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("free_propagator: non-finite time");
  SpectralField out(f);
  const int K = f.mode_cutoff();
  for (int k = -K; k <= K; ++k) out[k] *= std::polar(1.0, -t * static_cast<double>(k) * k);
  return out;
}

SpectralField inverse_derivative(const SpectralField& f) {
  SpectralField out(f.grid());
  const int K = f.mode_cutoff();
  for (int k = -K; k <= K; ++k)
    if (k != 0) out[k] = f[k] / Complex(0.0, k);
  return out;
}

SpectralField derivative(const SpectralField& f) {
  SpectralField out(f.grid());
  const int K = f.mode_cutoff();
  for (int k = -K; k <= K; ++k) out[k] = Complex(0.0, k) * f[k];
  return out;
}

SpectralField cubic_convolution(const SpectralField& f) {
  const auto samples = to_physical(f);
  std::vector<Complex> cubed(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) cubed[j] = std::norm(samples[j]) * samples[j];
  return from_physical(cubed, f.grid());
}

Complex inner_product(const SpectralField& u, const SpectralField& g) {
  if (!(u.grid() == g.grid())) throw std::invalid_argument("inner_product: fields live on different grids");
  Complex s{};
  const auto a = u.coefficients();
  const auto b = g.coefficients();
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double sobolev_distance(const SpectralField& u, const SpectralField& v, double alpha) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("sobolev_distance: fields live on different grids");
  const int K = u.mode_cutoff();
  double s = 0.0;
  for (int k = -K; k <= K; ++k) s += std::pow(1.0 + static_cast<double>(k) * k, alpha) * std::norm(u[k] - v[k]);
  return std::sqrt(s);
}

} // namespace snls
