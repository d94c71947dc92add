#pragma once

#include <complex>
#include <span>
#include <vector>

namespace snls {

using Complex = std::complex<double>;

/// Mode set {-K..K} on the torus [0, 2pi) together with the physical sample
/// count used for transforms. N leaves room for exact (alias-free) cubic
/// products of fields on the mode set.
class TorusGrid {
public:
  int mode_cutoff() const noexcept { return cutoff_; }
  int samples() const noexcept { return samples_; }
  int mode_count() const noexcept { return 2 * cutoff_ + 1; }

  /// Storage index of mode k (ascending k order).
  int index(int k) const noexcept { return k + cutoff_; }
  int mode(int index) const noexcept { return index - cutoff_; }
  bool contains(int k) const noexcept { return k >= -cutoff_ && k <= cutoff_; }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

private:
  friend TorusGrid make_grid(int K);
  TorusGrid(int cutoff, int samples) : cutoff_(cutoff), samples_(samples) {}

  int cutoff_ = 1;
  int samples_ = 8;
};

/// Grid for modes -K..K. Throws std::invalid_argument when K < 1.
TorusGrid make_grid(int K);

/// Fourier coefficients c_k, k = -K..K, stored in ascending k.
class SpectralField {
public:
  explicit SpectralField(const TorusGrid& grid);
  /// Takes ownership of coefficients; size must be 2K+1 and all entries finite.
  SpectralField(const TorusGrid& grid, std::vector<Complex> coefficients);

  const TorusGrid& grid() const noexcept { return grid_; }
  int mode_cutoff() const noexcept { return grid_.mode_cutoff(); }

  Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(grid_.index(k))]; }
  const Complex& operator[](int k) const { return coeffs_[static_cast<std::size_t>(grid_.index(k))]; }

  std::span<Complex> coefficients() noexcept { return coeffs_; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  bool all_finite() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, Complex s) { return a *= s; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= Complex(s); }

private:
  void require_same_grid(const SpectralField& other) const;

  TorusGrid grid_;
  std::vector<Complex> coeffs_;
};

/// Samples u(x_j) = sum_k c_k e^{i k x_j} at x_j = 2 pi j / N.
std::vector<Complex> to_physical(const SpectralField& f);

/// Inverse of to_physical on the retained modes. Throws on size mismatch.
SpectralField from_physical(std::span<const Complex> samples, const TorusGrid& grid);

/// Multiplies mode k by e^{-i t k^2}, i.e. applies e^{i t d_xx}.
SpectralField free_propagator(const SpectralField& f, double t);

/// Multiplies mode k != 0 by 1/(ik); the zero mode is set to 0.
SpectralField inverse_derivative(const SpectralField& f);

/// Multiplies mode k by ik.
SpectralField derivative(const SpectralField& f);

/// Spectrum of |u|^2 u restricted to -K..K:
/// out_k = sum_{k = -k1 + k2 + k3} conj(c_{k1}) c_{k2} c_{k3}, indices in -K..K.
SpectralField cubic_convolution(const SpectralField& f);

/// Complex Fourier pairing sum_k conj(u_k) g_k.
Complex inner_product(const SpectralField& u, const SpectralField& g);

/// sum_k (1 + k^2)^alpha |u_k - v_k|^2, square-rooted.
double sobolev_distance(const SpectralField& u, const SpectralField& v, double alpha);

} // namespace snls
