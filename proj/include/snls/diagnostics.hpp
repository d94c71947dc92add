#pragma once

#include "snls/torus.hpp"

#include <functional>

namespace snls {

struct DiagnosticsRow {
  double time = 0.0;
  double mass = 0.0;
  double energy_h0 = 0.0;
  double sobolev = 0.0;
};

/// sum_k |u_k|^2 (the 2 pi of the integral is dropped).
double mass(const SpectralField& u);

/// sum_{k + k1 = k2 + k3} conj(u_k) conj(u_{k1}) u_{k2} u_{k3}, indices in -K..K.
/// Real up to rounding; the complex value is returned so callers can check.
Complex quartic_pairing(const SpectralField& u);

/// 1/2 sum k^2 |u_k|^2 + lambda/4 Re quartic_pairing(u).
double energy_h0(const SpectralField& u, double lambda);

/// sqrt(sum (1 + k^2)^alpha |u_k|^2). Throws std::invalid_argument for alpha < 0.
double sobolev_norm(const SpectralField& u, double alpha);

DiagnosticsRow diagnostics_row(const SpectralField& u, double time, double lambda, double alpha);

using StepMap = std::function<SpectralField(const SpectralField&)>;

/// ||M^T J M - J||_inf for the Jacobian M of map in real coordinates
/// (Re u_k, Im u_k), by central differences with increment h; J pairs Re and
/// Im of each mode. Exceptions thrown by map propagate.
double symplectic_defect(const StepMap& map, const SpectralField& u, double h);

} // namespace snls
