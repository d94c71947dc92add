#include "snls/maps.hpp"

#include "spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snls {

void ModelParams::validate() const {
  if (!std::isfinite(lambda) || !std::isfinite(kappa))
    throw std::invalid_argument("ModelParams: lambda and kappa must be finite");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("ModelParams: alpha must be > 1");
}

SpectralField map_F(const ModelParams& params, const KernelSpec& spec, double t, double c, int p,
                    const SpectralField& v) {
  if (!(t > 0.0)) throw std::invalid_argument("map_F: t must be > 0");
  const int K = v.mode_cutoff();
  SpectralField out(v.grid());
  if (params.lambda == 0.0) return out;
  for (int k = -K; k <= K; ++k) {
    Complex acc{};
    for (int k1 = -K; k1 <= K; ++k1) {
      const Complex cv1 = std::conj(v[k1]);
      for (int k2 = -K; k2 <= K; ++k2) {
        const int k3 = k + k1 - k2;
        if (k3 < -K || k3 > K) continue;
        const Complex w = kernel_weight(spec, ModeQuad{k, k1, k2, k3}, t, c, p);
        acc += w * cv1 * v[k2] * v[k3];
      }
    }
    out[k] = Complex(0.0, -params.lambda) * acc;
  }
  return out;
}

SpectralField map_P_frozen(const ModelParams& params, const CovarianceOp& phi, double t, const SpectralField& v,
                           const NoiseIncrement& X) {
  if (!(t > 0.0)) throw std::invalid_argument("map_P_frozen: t must be > 0");
  if (std::abs(X.step - t) > 1e-12 * t) throw std::invalid_argument("map_P_frozen: noise increment built for another step");
  const int K = v.mode_cutoff();
  if (X.mode_cutoff() != K || phi.mode_cutoff() != K)
    throw std::invalid_argument("map_P_frozen: noise and field mode cutoffs differ");
  SpectralField out(v.grid());
  if (params.kappa == 0.0) return out;
  std::vector<double> g(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) g[static_cast<std::size_t>(k + K)] = phi[k] * X[k];
  for (int k = -K; k <= K; ++k) {
    Complex acc{};
    for (int k1 = std::max(-K, k - K); k1 <= std::min(K, k + K); ++k1) acc += v[k1] * g[static_cast<std::size_t>(k - k1 + K)];
    out[k] = Complex(0.0, -params.kappa) * acc;
  }
  return out;
}

SpectralField map_F_midpoint_physical(const ModelParams& params, double t, const SpectralField& v) {
  using namespace detail;
  if (!(t > 0.0)) throw std::invalid_argument("map_F_midpoint_physical: t must be > 0");
  const TorusGrid& grid = v.grid();
  if (params.lambda == 0.0) return SpectralField(grid);
  const int n = grid.samples();

  // Each kernel term integrates to t*phi1(...) = (e^{...} - 1)/(i rate); the
  // denominators 2ik k1, 2ik2 k3 factor into inverse derivatives.
  const FullSpectrum V = embed(v);
  const FullSpectrum Vc = conjugate(V);
  const FullSpectrum DV = inverse_derivative(V);
  const FullSpectrum cDV = conjugate(DV);
  const FullSpectrum V2 = product(V, V);
  const Complex half_over_i(0.0, -0.5); // 1/(2i)

  // Dominant factor e^{-2iskk1}: terms with k k1 != 0.
  FullSpectrum a1 = inverse_derivative(propagate(product(propagate(cDV, -t), propagate(V2, t)), -t));
  const FullSpectrum a2 = inverse_derivative(product(cDV, V2));
  // Lower factor e^{2isk2k3}: terms with k2 k3 != 0.
  const FullSpectrum PD = propagate(DV, t);
  FullSpectrum b1 = product(Vc, propagate(product(PD, PD), -t));
  const FullSpectrum b2 = product(Vc, product(DV, DV));

  const FullSpectrum cubic = product(Vc, V2);  // |v|^2 v
  const FullSpectrum mod2 = product(Vc, V);    // |v|^2
  const Complex v0 = V[0];
  const Complex cv0 = std::conj(v0);

  FullSpectrum total(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const Complex A = half_over_i * (-a1[i] + a2[i]);
    const Complex B = -half_over_i * b1[i] + half_over_i * b2[i];
    // Zero-mode corrections: quads where k k1 = 0 or k2 k3 = 0 have weight t
    // for that factor instead of the phi1 form.
    Complex ZA = cv0 * V2[i];
    if (m == 0) ZA += cubic[0] - cv0 * V2[0];
    const Complex ZB = 2.0 * v0 * mod2[i] - v0 * v0 * Vc[i];
    total[i] = A + B + t * (ZA + ZB - cubic[i]);
  }
  SpectralField out = truncate(total, grid);
  out *= Complex(0.0, -params.lambda);
  return out;
}

double orthogonality_defect(const SpectralField& u, const SpectralField& g) { return inner_product(u, g).real(); }

} // namespace snls
