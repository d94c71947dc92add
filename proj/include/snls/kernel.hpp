#pragma once

#include "snls/torus.hpp"

#include <vector>

namespace snls {

/// Interpolation order d and points 0 <= gamma_1 < ... < gamma_d <= 1 used to
/// replace an oscillation e^{i w s} on [0, t] by a polynomial of degree d-1.
class KernelSpec {
public:
  /// Throws std::invalid_argument unless the points are non-empty, inside
  /// [0, 1], ascending and pairwise distinct.
  explicit KernelSpec(std::vector<double> gamma);

  /// d = 1 uses gamma = {0}; d >= 2 uses equispaced points (j-1)/(d-1).
  static KernelSpec with_default_points(int d);

  int order() const noexcept { return static_cast<int>(gamma_.size()); }
  const std::vector<double>& points() const noexcept { return gamma_; }

  /// True for d = 1, gamma = {0}: the plain symplectic kernel.
  bool is_symplectic_default() const noexcept { return gamma_.size() == 1 && gamma_[0] == 0.0; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
  std::vector<double> gamma_;
};

/// Frequency quadruple of one term of the cubic convolution, k + k1 = k2 + k3.
struct ModeQuad {
  int k = 0, k1 = 0, k2 = 0, k3 = 0;

  /// Throws std::invalid_argument when k + k1 != k2 + k3.
  static ModeQuad checked(int k, int k1, int k2, int k3);

  /// Frequency of the "dominant" factor e^{-2 i s k k1}.
  double dominant_rate() const noexcept { return -2.0 * k * k1; }
  /// Frequency of the "lower" factor e^{2 i s k2 k3}.
  double lower_rate() const noexcept { return 2.0 * k2 * k3; }

  /// The quad with the conjugate slots exchanged: (k2, k3, k, k1).
  ModeQuad swapped() const noexcept { return {k2, k3, k, k1}; }
};

/// (e^z - 1)/z, equal to 1 at z = 0.
Complex phi1(Complex z);

/// Closed form of int_0^T s^p e^{i omega s} ds.
Complex weighted_exp_integral(double omega, double T, int p);

/// Interpolant of s -> e^{i omega s} at s = t gamma_j, degree d-1. Stored in
/// the scaled variable sigma = s/t to keep coefficients O(1).
class InterpPolynomial {
public:
  InterpPolynomial(double scale, std::vector<Complex> coefficients)
      : scale_(scale), coeffs_(std::move(coefficients)) {}

  Complex operator()(double s) const;

  double scale() const noexcept { return scale_; }
  /// Coefficients c_m of sum_m c_m (s/scale)^m.
  const std::vector<Complex>& scaled_coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

private:
  double scale_;
  std::vector<Complex> coeffs_;
};

InterpPolynomial interp_exp(const KernelSpec& spec, double omega, double t);

/// Exact resonance kernel e^{i s (-2 k k1 + 2 k2 k3)}.
Complex kernel_exact(const ModeQuad& q, double s);

/// Interpolated symplectic kernel
///   e^{-2isk k1} P[e^{2i. k2k3}](s) + e^{2isk2k3} P[e^{-2i. kk1}](s) - P[..]P[..].
/// For d = 1, gamma = {0} this is e^{-2iskk1} + e^{2isk2k3} - 1.
Complex kernel_K2d(const KernelSpec& spec, const ModeQuad& q, double s, double t);

/// (1/t^{p+1}) int_0^{c t} K2d(s) s^p ds, integrated in closed form.
Complex kernel_weight(const KernelSpec& spec, const ModeQuad& q, double t, double c, int p);

} // namespace snls
