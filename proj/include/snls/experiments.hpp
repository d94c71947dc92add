#pragma once

#include "snls/config.hpp"
#include "snls/integrator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace snls {

/// Named initial data on grid:
///   smooth     modes 0,+-1,2,-3 with fixed coefficients, unit H^2 norm (K >= 3)
///   rough-<s>  c_k ~ <k>^{-s-1/2} e^{i theta_k}, theta_k from seed, unit mass
///   snapshot:<path>  snapshot file, mode cutoff must match
/// Throws ConfigError for unknown ids.
SpectralField initial_data(const std::string& id, const TorusGrid& grid, std::uint64_t seed);

/// Midpoint scheme from u0 over [0, t_end] with substep equal to the path's
/// cell width. Needs at least 256 substeps; throws std::invalid_argument
/// otherwise. StepRejected propagates.
SpectralField reference_solution(const SpectralField& u0, const ModelParams& params, const CovarianceOp& phi,
                                 const BrownianPath& path, double t_end, const FixedPointConfig& fp = {});

struct ErrorRow {
  double t = 0.0;
  double rms = 0.0;
  double max = 0.0;
  int samples = 0;
  int rejected = 0;
  bool degenerate = false;
};

struct ErrorTable {
  std::string label;
  std::vector<ErrorRow> rows;
  double slope = 0.0;          ///< least squares in log2, over non-degenerate rows
  double slope_residual = 0.0; ///< RMS residual of that fit
  int fitted_rows = 0;
  double full_slope = 0.0;     ///< fit over every row with positive error
  bool degenerate = false;     ///< fewer than two usable rows
  bool fit_max = false;        ///< fit the max column instead of rms
};

/// Least-squares slope of log2(err) against log2(t) over non-degenerate rows;
/// fills slope, slope_residual, fitted_rows, degenerate and full_slope.
void fit_slope(ErrorTable& table);

/// Strong one-step error of the configured tableau vs reference_solution on
/// the same path, t = 2^-t_max_exp .. 2^-t_min_exp, cfg.samples paths per t.
/// Throws ExperimentInvalid when more than 20% of the samples at some t are
/// rejected or samples < 16.
ErrorTable cmd_local_error(const RunConfig& cfg);

/// max over cfg.quads random quads (|k| <= mode_bound) and s in [0, t] of
/// |K2d - exact|. Rows with 2 B^2 t > 1 are pre-asymptotic and not fitted.
ErrorTable cmd_kernel_error(const RunConfig& cfg);

struct ConservationSummary {
  RunRecord record;
  double max_mass_drift = 0.0;   ///< max_n |M_n - M_0| / M_0
  double final_mass_drift = 0.0;
  double max_energy_drift = 0.0; ///< max_n |H_n - H_0| / max(|H_0|, 1e-300)
  bool completed = true;
  long failed_step = -1;
};

/// Runs simulate and summarises drift. A rejected step stops the run and is
/// reported (completed = false) rather than thrown.
ConservationSummary cmd_conservation(const RunConfig& cfg);

struct SymplecticSummary {
  int K = 0;
  double t = 0.0;
  double h = 0.0;
  double defect_h = 0.0;
  double defect_h2 = 0.0;
};

/// Jacobian test of one frozen-noise step at the configured initial data.
/// Requires K <= 6 (ConfigError otherwise).
SymplecticSummary cmd_symplectic(const RunConfig& cfg);

/// simulate with the configured setup. StepRejected propagates after the
/// record up to the failure has been stored in record_out (if given).
RunRecord cmd_simulate(const RunConfig& cfg, RunRecord* record_out = nullptr);

/// Builds the simulation setup a config describes (used by the commands).
SimulationSetup make_setup(const RunConfig& cfg);

/// Independent per-sample seed derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace snls
