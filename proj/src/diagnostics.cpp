#include "snls/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace snls {

double mass(const SpectralField& u) {
  double s = 0.0;
  for (const auto& c : u.coefficients()) s += std::norm(c);
  return s;
}

Complex quartic_pairing(const SpectralField& u) { return inner_product(u, cubic_convolution(u)); }

double energy_h0(const SpectralField& u, double lambda) {
  const int K = u.mode_cutoff();
  double kinetic = 0.0;
  for (int k = -K; k <= K; ++k) kinetic += static_cast<double>(k) * k * std::norm(u[k]);
  double e = 0.5 * kinetic;
  if (lambda != 0.0) e += 0.25 * lambda * quartic_pairing(u).real();
  return e;
}

double sobolev_norm(const SpectralField& u, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("sobolev_norm: alpha must be >= 0");
  return sobolev_distance(u, SpectralField(u.grid()), alpha);
}

DiagnosticsRow diagnostics_row(const SpectralField& u, double time, double lambda, double alpha) {
  return {time, mass(u), energy_h0(u, lambda), sobolev_norm(u, alpha)};
}

double symplectic_defect(const StepMap& map, const SpectralField& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("symplectic_defect: h must be > 0");
  const int K = u.mode_cutoff();
  const int modes = 2 * K + 1;
  const int n = 2 * modes;
  // M[r][c], r and c = 2*(k+K) + {0: Re, 1: Im}
  std::vector<double> M(static_cast<std::size_t>(n * n));
  for (int c = 0; c < n; ++c) {
    const int k = c / 2 - K;
    const Complex dir = (c % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, h);
    SpectralField up(u), um(u);
    up[k] += dir;
    um[k] -= dir;
    const SpectralField fp = map(up), fm = map(um);
    for (int kk = -K; kk <= K; ++kk) {
      const Complex d = (fp[kk] - fm[kk]) / (2.0 * h);
      const int r = 2 * (kk + K);
      M[static_cast<std::size_t>(r * n + c)] = d.real();
      M[static_cast<std::size_t>((r + 1) * n + c)] = d.imag();
    }
  }
  // (M^T J M)_{ij} = sum_m M_{2m,i} M_{2m+1,j} - M_{2m+1,i} M_{2m,j}
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int m = 0; m < modes; ++m) {
        const auto re = static_cast<std::size_t>(2 * m * n), im = static_cast<std::size_t>((2 * m + 1) * n);
        s += M[re + static_cast<std::size_t>(i)] * M[im + static_cast<std::size_t>(j)] -
             M[im + static_cast<std::size_t>(i)] * M[re + static_cast<std::size_t>(j)];
      }
      double J = 0.0;
      if (i / 2 == j / 2) J = (i % 2 == 0 && j % 2 == 1) ? 1.0 : (i % 2 == 1 && j % 2 == 0 ? -1.0 : 0.0);
      worst = std::max(worst, std::abs(s - J));
    }
  return worst;
}

} // namespace snls
