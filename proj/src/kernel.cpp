#include "snls/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace snls {

KernelSpec::KernelSpec(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw std::invalid_argument("KernelSpec: need at least one interpolation point");
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    const double g = gamma_[j];
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("KernelSpec: point outside [0, 1]");
    if (j > 0 && !(g > gamma_[j - 1]))
      throw std::invalid_argument("KernelSpec: points must be ascending and distinct");
  }
}

KernelSpec KernelSpec::with_default_points(int d) {
  if (d < 1) throw std::invalid_argument("KernelSpec: order must be >= 1, got " + std::to_string(d));
  if (d == 1) return KernelSpec({0.0});
  std::vector<double> g(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) g[static_cast<std::size_t>(j)] = static_cast<double>(j) / (d - 1);
  return KernelSpec(std::move(g));
}

ModeQuad ModeQuad::checked(int k, int k1, int k2, int k3) {
  if (k + k1 != k2 + k3)
    throw std::invalid_argument("ModeQuad: k + k1 != k2 + k3 for (" + std::to_string(k) + "," + std::to_string(k1) +
                                "," + std::to_string(k2) + "," + std::to_string(k3) + ")");
  return {k, k1, k2, k3};
}

Complex phi1(Complex z) {
  if (std::abs(z) < 1e-4) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  // e^z - 1 without cancellation in either component.
  const double x = z.real(), y = z.imag();
  const double sh = std::sin(0.5 * y);
  const Complex em1(std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y));
  return em1 / z;
}

Complex weighted_exp_integral(double omega, double T, int p) {
  if (p < 0) throw std::invalid_argument("weighted_exp_integral: p must be >= 0");
  if (!(T >= 0.0)) throw std::invalid_argument("weighted_exp_integral: T must be >= 0");
  if (T == 0.0) return {};
  const double x = omega * T;
  if (std::abs(x) < std::max(2.0, static_cast<double>(p))) {
    // T^{p+1} sum_n (i x)^n / (n! (n+p+1))
    Complex term(1.0, 0.0), sum{};
    const Complex ix(0.0, x);
    for (int n = 0; n < 200; ++n) {
      const Complex add = term / static_cast<double>(n + p + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      term *= ix / static_cast<double>(n + 1);
    }
    return std::pow(T, p + 1) * sum;
  }
  // Upward recursion is stable once |omega T| exceeds p.
  const Complex iw(0.0, omega);
  const Complex e = std::polar(1.0, x);
  Complex J = T * phi1(Complex(0.0, x));
  double Tq = 1.0;
  for (int q = 1; q <= p; ++q) {
    Tq *= T;
    J = (Tq * e - static_cast<double>(q) * J) / iw;
  }
  return J;
}

Complex InterpPolynomial::operator()(double s) const {
  const double sigma = scale_ > 0.0 ? s / scale_ : 0.0;
  Complex v{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * sigma + *it;
  return v;
}

InterpPolynomial interp_exp(const KernelSpec& spec, double omega, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("interp_exp: t must be > 0");
  const auto& g = spec.points();
  const std::size_t d = g.size();
  // Newton divided differences in sigma, then expand to monomials.
  std::vector<Complex> dd(d);
  for (std::size_t j = 0; j < d; ++j) dd[j] = std::polar(1.0, omega * t * g[j]);
  for (std::size_t level = 1; level < d; ++level)
    for (std::size_t j = d - 1; j >= level; --j) {
      const double h = g[j] - g[j - level];
      if (h == 0.0) throw std::invalid_argument("interp_exp: duplicated interpolation point");
      dd[j] = (dd[j] - dd[j - 1]) / h;
    }
  std::vector<Complex> coeffs(d, Complex{});
  // Horner on the Newton form: p = dd[d-1]; p = p*(sigma - g[j]) + dd[j].
  coeffs[0] = dd[d - 1];
  for (std::size_t jj = d - 1; jj-- > 0;) {
    for (std::size_t m = d - 1; m > 0; --m) coeffs[m] = coeffs[m - 1] - g[jj] * coeffs[m];
    coeffs[0] = -g[jj] * coeffs[0];
    coeffs[0] += dd[jj];
  }
  return InterpPolynomial(t, std::move(coeffs));
}

Complex kernel_exact(const ModeQuad& q, double s) {
  return std::polar(1.0, s * (q.dominant_rate() + q.lower_rate()));
}

Complex kernel_K2d(const KernelSpec& spec, const ModeQuad& q, double s, double t) {
  const double wa = q.dominant_rate(), wb = q.lower_rate();
  const Complex pa = interp_exp(spec, wa, t)(s);
  const Complex pb = interp_exp(spec, wb, t)(s);
  return std::polar(1.0, wa * s) * pb + std::polar(1.0, wb * s) * pa - pa * pb;
}

Complex kernel_weight(const KernelSpec& spec, const ModeQuad& q, double t, double c, int p) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_weight: t must be > 0");
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("kernel_weight: node outside [0, 1]");
  if (p < 0) throw std::invalid_argument("kernel_weight: p must be >= 0");
  const double wa = q.dominant_rate() * t, wb = q.lower_rate() * t;
  // Scaled variable sigma = s/t turns the integral into int_0^c K(t sigma) sigma^p.
  const auto alpha = interp_exp(spec, q.dominant_rate(), t).scaled_coefficients();
  const auto beta = interp_exp(spec, q.lower_rate(), t).scaled_coefficients();
  Complex w{};
  for (std::size_t m = 0; m < beta.size(); ++m) w += beta[m] * weighted_exp_integral(wa, c, static_cast<int>(m) + p);
  for (std::size_t m = 0; m < alpha.size(); ++m) w += alpha[m] * weighted_exp_integral(wb, c, static_cast<int>(m) + p);
  for (std::size_t m = 0; m < alpha.size(); ++m)
    for (std::size_t n = 0; n < beta.size(); ++n) {
      const int e = static_cast<int>(m + n) + p + 1;
      w -= alpha[m] * beta[n] * std::pow(c, e) / static_cast<double>(e);
    }
  return w;
}

} // namespace snls
