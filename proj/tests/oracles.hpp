#pragma once

// Independent reference computations used by the unit tests. None of these
// call the library code paths they check.

#include "snls/kernel.hpp"
#include "snls/torus.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using snls::Complex;

inline snls::SpectralField random_field(const snls::TorusGrid& g, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n;
  snls::SpectralField f(g);
  for (auto& c : f.coefficients()) c = scale * Complex(n(rng), n(rng));
  return f;
}

inline double l2(const snls::SpectralField& f) {
  double s = 0;
  for (auto c : f.coefficients()) s += std::norm(c);
  return std::sqrt(s);
}

inline double l2_diff(const snls::SpectralField& a, const snls::SpectralField& b) {
  double s = 0;
  for (int k = -a.mode_cutoff(); k <= a.mode_cutoff(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

/// u(x) = sum_k c_k e^{ikx} by direct summation.
inline Complex eval_at(const snls::SpectralField& f, double x) {
  Complex s{};
  for (int k = -f.mode_cutoff(); k <= f.mode_cutoff(); ++k) s += f[k] * std::polar(1.0, k * x);
  return s;
}

/// out_k = sum_{k = -k1 + k2 + k3} conj(c_k1) c_k2 c_k3, all indices in -K..K.
inline snls::SpectralField direct_cubic(const snls::SpectralField& f) {
  const int K = f.mode_cutoff();
  snls::SpectralField out(f.grid());
  for (int k = -K; k <= K; ++k)
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) {
        const int k3 = k + k1 - k2;
        if (k3 >= -K && k3 <= K) out[k] += std::conj(f[k1]) * f[k2] * f[k3];
      }
  return out;
}

/// Composite 61-point Kronrod rule on [a, b], panels sized so each spans at
/// most ~2 radians of the oscillation e^{i omega s}.
inline Complex integrate(const std::function<Complex(double)>& f, double a, double b, double omega = 0.0) {
  using boost::math::quadrature::gauss_kronrod;
  const int panels = 1 + static_cast<int>(std::abs(omega) * (b - a) / 2.0);
  const double h = (b - a) / panels;
  Complex sum{};
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h, hi = lo + h;
    sum += Complex(gauss_kronrod<double, 61>::integrate([&](double s) { return f(s).real(); }, lo, hi, 0),
                   gauss_kronrod<double, 61>::integrate([&](double s) { return f(s).imag(); }, lo, hi, 0));
  }
  return sum;
}

/// Lagrange form of the polynomial through (t gamma_j, e^{i omega t gamma_j}).
inline Complex lagrange_exp(const std::vector<double>& gamma, double omega, double t, double s) {
  Complex v{};
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    double basis = 1.0;
    for (std::size_t m = 0; m < gamma.size(); ++m)
      if (m != j) basis *= (s - t * gamma[m]) / (t * gamma[j] - t * gamma[m]);
    v += basis * std::polar(1.0, omega * t * gamma[j]);
  }
  return v;
}

/// Kernel K2d written out from the Lagrange form.
inline Complex kernel_lagrange(const std::vector<double>& gamma, int k, int k1, int k2, int k3, double s, double t) {
  const double wa = -2.0 * k * k1, wb = 2.0 * k2 * k3;
  const Complex pa = lagrange_exp(gamma, wa, t, s), pb = lagrange_exp(gamma, wb, t, s);
  return std::polar(1.0, wa * s) * pb + std::polar(1.0, wb * s) * pa - pa * pb;
}

/// Classical RK4 on the truncated Galerkin system
///   du_k/dt = -i k^2 u_k - i lambda (|u|^2 u)_k
/// using the direct triple sum for the nonlinearity.
inline snls::SpectralField rk4_nls(const snls::SpectralField& u0, double lambda, double T, int steps) {
  const int K = u0.mode_cutoff();
  auto rhs = [&](const snls::SpectralField& u) {
    snls::SpectralField c = direct_cubic(u);
    snls::SpectralField r(u.grid());
    for (int k = -K; k <= K; ++k) r[k] = Complex(0, -1.0) * (static_cast<double>(k) * k * u[k] + lambda * c[k]);
    return r;
  };
  const double h = T / steps;
  snls::SpectralField u = u0;
  for (int n = 0; n < steps; ++n) {
    const auto a = rhs(u);
    const auto b = rhs(u + (0.5 * h) * a);
    const auto c = rhs(u + (0.5 * h) * b);
    const auto d = rhs(u + h * c);
    u += (h / 6.0) * (a + 2.0 * b + 2.0 * c + d);
  }
  return u;
}

} // namespace oracle
