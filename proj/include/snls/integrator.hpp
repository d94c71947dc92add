#pragma once

#include "snls/errors.hpp"
#include "snls/kernel.hpp"
#include "snls/maps.hpp"
#include "snls/noise.hpp"
#include "snls/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace snls {

/// Stage label alpha = (p, q, r): p is the power of s in the stage weight, q
/// indexes the node c_q, r distinguishes otherwise equal stages.
struct StageLabel {
  int p = 0, q = 0, r = 0;
  friend bool operator==(const StageLabel&, const StageLabel&) = default;
};

struct Tableau {
  std::string name;
  std::vector<StageLabel> stages;
  std::vector<double> nodes;                // c_q
  std::vector<std::vector<double>> a0, a1;  // [alpha][alpha~]
  std::vector<double> b0, b1;
  KernelSpec kernel = KernelSpec({0.0});

  int stage_count() const noexcept { return static_cast<int>(stages.size()); }
  double node(int stage) const { return nodes.at(static_cast<std::size_t>(stages.at(static_cast<std::size_t>(stage)).q)); }
  /// Throws std::invalid_argument on inconsistent sizes, non-finite
  /// coefficients, nodes outside [0, 1] or negative powers.
  void check_shape() const;
  /// Single stage, p = 0, c = 1 and d = 1, gamma = {0}: the stage maps have
  /// a closed physical-space form.
  bool has_fast_path() const;
};

struct TableauViolation {
  int i = 0, j = 0;                  // coefficient families a^(i), a^(j)
  int alpha = 0, alpha_tilde = 0;    // stage indices
  double defect = 0.0;
};

/// Checks b^(i)_a b^(j)_b - b^(i)_a a^(j)_{a,b} - b^(j)_b a^(i)_{b,a} = 0 for all
/// stage pairs and i, j in {0, 1}, to 1e-14 absolute. Empty means the
/// tableau conserves mass and the symplectic form.
std::vector<TableauViolation> validate_tableau(const Tableau& tab);

/// b = 1, a = 1/2, node value 1, d = 1, gamma = {0}.
Tableau midpoint_tableau();
/// b = 1, a = 0: explicit, violates the coefficient conditions.
Tableau explicit_tableau();
/// One stage with b^(0) = b^(1) = b and a^(0) = a^(1) = a.
Tableau single_stage_tableau(double b, double a);
/// "midpoint" | "explicit". Throws std::invalid_argument otherwise.
Tableau tableau_by_name(const std::string& name);

struct FixedPointConfig {
  double tol = 1e-12;
  int max_iter = 100;
  double divergence_factor = 10.0;

  /// Throws std::invalid_argument unless tol > 0, max_iter >= 1, factor > 1.
  void validate() const;
};

template <class State>
struct FixedPointResult {
  State solution;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

/// Iterates x <- g(x) from guess until dist(new, old) <= tol. Throws
/// StepRejected when max_iter is exhausted, the residual becomes non-finite,
/// or it exceeds divergence_factor times the best residual seen so far.
template <class State, class Map, class Dist>
FixedPointResult<State> fixed_point_solve(Map&& g, State guess, const FixedPointConfig& fp, Dist&& dist) {
  fp.validate();
  FixedPointResult<State> r{std::move(guess), 0, 0.0, {}};
  double best = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= fp.max_iter; ++it) {
    State next = g(r.solution);
    const double res = dist(next, r.solution);
    r.solution = std::move(next);
    r.iterations = it;
    r.residual = res;
    r.history.push_back(res);
    if (!std::isfinite(res)) throw StepRejected("fixed point: non-finite residual", res, it);
    if (res <= fp.tol) return r;
    if (res > fp.divergence_factor * best)
      throw StepRejected("fixed point: residual grew past divergence factor", res, it);
    best = std::min(best, res);
  }
  throw StepRejected("fixed point: no convergence within max_iter", r.residual, r.iterations);
}

enum class InitialGuess { Previous, Propagated };

struct StepOptions {
  InitialGuess guess = InitialGuess::Previous;
  /// Use the FFT form of the deterministic map when the tableau allows it.
  bool fast_path = true;
};

struct StepOutcome {
  SpectralField state;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> history;
};

/// One step with per-stage noise frozen: noise[alpha] is the normalised stage
/// increment used by the stochastic map of stage alpha. Throws StepRejected.
StepOutcome step_frozen(const SpectralField& un, const Tableau& tab, const ModelParams& params,
                        const CovarianceOp& phi, const std::vector<NoiseIncrement>& noise, double t,
                        const FixedPointConfig& fp, const StepOptions& opts = {});

/// Stage noise of every stage of tab for the step [tn, tn + t] of path.
std::vector<NoiseIncrement> stage_noises(const Tableau& tab, const BrownianPath& path, double tn, double t);

/// One step of the scheme over [tn, tn + t], noise drawn from path.
StepOutcome step(const SpectralField& un, const Tableau& tab, const ModelParams& params, const CovarianceOp& phi,
                 const BrownianPath& path, double tn, double t, const FixedPointConfig& fp,
                 const StepOptions& opts = {});

/// Positive root t of C_R t + C_PhiW sqrt(t) = 1. Throws for C_R <= 0 or
/// C_PhiW < 0.
double step_bound(double C_R, double C_PhiW);

struct StepConstants {
  double C_R = 0.0;    ///< Lipschitz bound of the deterministic stage term per unit t.
  double C_PhiW = 0.0; ///< Lipschitz bound of the stochastic stage term per unit sqrt(t).
};

/// Empirical Lipschitz probing of the stage map at u (random directions of
/// relative size probe, H^alpha norm). Scaled by the largest |a| of tab.
StepConstants estimate_step_constants(const SpectralField& u, const Tableau& tab, const ModelParams& params,
                                      const CovarianceOp& phi, const std::vector<NoiseIncrement>& noise, double t,
                                      std::uint64_t seed, int directions = 4, double probe = 1e-4);

struct RunRow {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
  double energy_h0 = 0.0;
  double sobolev_alpha = 0.0;
  int fp_iters = 0;
  double fp_residual = 0.0;
  int rejected = 0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<std::string> header; ///< config echo, written as '#' lines
  std::vector<RunRow> rows;
  std::vector<std::pair<long, SpectralField>> snapshots;
};

struct SimulationSetup {
  SimulationSetup(SpectralField u0, CovarianceOp cov, BrownianPath noise_path)
      : initial(std::move(u0)), phi(std::move(cov)), path(std::move(noise_path)) {}

  SpectralField initial;
  Tableau tableau = midpoint_tableau();
  ModelParams params;
  CovarianceOp phi;
  BrownianPath path;
  double dt = 1e-2;
  long steps = 0;
  FixedPointConfig fp;
  StepOptions options;
  long snapshot_every = 0; ///< 0 disables snapshots
};

/// Steps from setup.initial, appending one row per step (row 0 holds the
/// initial diagnostics). On rejection a row with rejected = 1 is appended and
/// StepRejected is rethrown with the failing step index.
void simulate_into(const SimulationSetup& setup, RunRecord& record);
RunRecord simulate(const SimulationSetup& setup);

/// Path level/horizon that puts n * dt on the grid for n <= steps, with
/// extra_levels additional refinements.
BrownianPath path_for_run(std::uint64_t seed, double dt, long steps, int K, int extra_levels = 0,
                          NoiseSymmetry symmetry = NoiseSymmetry::Even);

} // namespace snls
