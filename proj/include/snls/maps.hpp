#pragma once

#include "snls/kernel.hpp"
#include "snls/noise.hpp"
#include "snls/torus.hpp"

namespace snls {

/// Equation parameters for i u_t + u_xx = lambda |u|^2 u + kappa u o dW.
struct ModelParams {
  double lambda = 1.0;
  double kappa = 1.0;
  double alpha = 2.0; ///< Sobolev exponent of residuals and error norms.

  /// Throws std::invalid_argument unless lambda, kappa finite and alpha > 1.
  void validate() const;
};

/// Deterministic resonance map, ground-truth direct sum:
///   out_k = -i lambda sum_{k+k1=k2+k3} w(k,k1,k2,k3) conj(v_{k1}) v_{k2} v_{k3}
/// with w = kernel_weight(spec, quad, t, c, p). O(K^3) per mode.
SpectralField map_F(const ModelParams& params, const KernelSpec& spec, double t, double c, int p,
                    const SpectralField& v);

/// Frozen-noise stochastic map:
///   out_k = -i kappa sum_{k = k1 + k2} v_{k1} Phi_{k2} X_{k2}.
/// X carries any stage weighting (see stage_noise). Throws
/// std::invalid_argument when X.step differs from t or X lives on another grid.
SpectralField map_P_frozen(const ModelParams& params, const CovarianceOp& phi, double t, const SpectralField& v,
                           const NoiseIncrement& X);

/// t * map_F(d=1, gamma={0}, p=0, c=1) evaluated with FFT-diagonal operators
/// (propagators, inverse derivative) and pointwise products. O(N log N).
SpectralField map_F_midpoint_physical(const ModelParams& params, double t, const SpectralField& v);

/// Re sum_k conj(u_k) g_k.
double orthogonality_defect(const SpectralField& u, const SpectralField& g);

} // namespace snls
