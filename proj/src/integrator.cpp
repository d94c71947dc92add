#include "snls/integrator.hpp"

#include "snls/diagnostics.hpp"

#include <random>
#include <stdexcept>

namespace snls {

void Tableau::check_shape() const {
  const std::size_t S = stages.size();
  if (S == 0) throw std::invalid_argument("Tableau: no stages");
  if (b0.size() != S || b1.size() != S || a0.size() != S || a1.size() != S)
    throw std::invalid_argument("Tableau '" + name + "': coefficient sizes do not match stage count");
  for (std::size_t i = 0; i < S; ++i) {
    if (a0[i].size() != S || a1[i].size() != S)
      throw std::invalid_argument("Tableau '" + name + "': coefficient matrix is not square");
    for (std::size_t j = 0; j < S; ++j)
      if (!std::isfinite(a0[i][j]) || !std::isfinite(a1[i][j]))
        throw std::invalid_argument("Tableau '" + name + "': non-finite coefficient");
    if (!std::isfinite(b0[i]) || !std::isfinite(b1[i]))
      throw std::invalid_argument("Tableau '" + name + "': non-finite weight");
    const auto& st = stages[i];
    if (st.p < 0 || st.q < 0 || static_cast<std::size_t>(st.q) >= nodes.size())
      throw std::invalid_argument("Tableau '" + name + "': bad stage label");
  }
  for (double c : nodes)
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("Tableau '" + name + "': node outside [0, 1]");
}

bool Tableau::has_fast_path() const {
  return stages.size() == 1 && stages[0].p == 0 && node(0) == 1.0 && kernel.is_symplectic_default();
}

std::vector<TableauViolation> validate_tableau(const Tableau& tab) {
  tab.check_shape();
  std::vector<TableauViolation> out;
  const int S = tab.stage_count();
  const std::vector<double>* b[2] = {&tab.b0, &tab.b1};
  const std::vector<std::vector<double>>* a[2] = {&tab.a0, &tab.a1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int al = 0; al < S; ++al)
        for (int at = 0; at < S; ++at) {
          const auto ua = static_cast<std::size_t>(al), ut = static_cast<std::size_t>(at);
          const double d = (*b[i])[ua] * (*b[j])[ut] - (*b[i])[ua] * (*a[j])[ua][ut] - (*b[j])[ut] * (*a[i])[ut][ua];
          if (std::abs(d) > 1e-14) out.push_back({i, j, al, at, d});
        }
  return out;
}

Tableau single_stage_tableau(double b, double a) {
  Tableau t;
  t.name = "single-stage";
  t.stages = {StageLabel{}};
  t.nodes = {1.0};
  t.a0 = {{a}};
  t.a1 = {{a}};
  t.b0 = {b};
  t.b1 = {b};
  t.check_shape();
  return t;
}

Tableau midpoint_tableau() {
  Tableau t = single_stage_tableau(1.0, 0.5);
  t.name = "midpoint";
  return t;
}

Tableau explicit_tableau() {
  Tableau t = single_stage_tableau(1.0, 0.0);
  t.name = "explicit";
  return t;
}

Tableau tableau_by_name(const std::string& name) {
  if (name == "midpoint") return midpoint_tableau();
  if (name == "explicit") return explicit_tableau();
  throw std::invalid_argument("unknown tableau '" + name + "' (expected midpoint|explicit)");
}

void FixedPointConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("FixedPointConfig: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("FixedPointConfig: max_iter must be >= 1");
  if (!(divergence_factor > 1.0)) throw std::invalid_argument("FixedPointConfig: divergence_factor must be > 1");
}

namespace {

using Stages = std::vector<SpectralField>;

struct StageTerms {
  Stages det; // t K_alpha
  Stages sto; // sqrt(t) L_alpha
};

class StageEvaluator {
public:
  StageEvaluator(const Tableau& tab, const ModelParams& params, const CovarianceOp& phi,
                 const std::vector<NoiseIncrement>& noise, double t, bool fast)
      : tab_(tab), params_(params), phi_(phi), noise_(noise), t_(t), fast_(fast && tab.has_fast_path()) {}

  SpectralField det(int alpha, const SpectralField& U) const {
    if (fast_) return map_F_midpoint_physical(params_, t_, U);
    const auto& st = tab_.stages[static_cast<std::size_t>(alpha)];
    return t_ * map_F(params_, tab_.kernel, t_, tab_.node(alpha), st.p, U);
  }

  SpectralField sto(int alpha, const SpectralField& U) const {
    return std::sqrt(t_) * map_P_frozen(params_, phi_, t_, U, noise_[static_cast<std::size_t>(alpha)]);
  }

  StageTerms eval(const Stages& U) const {
    StageTerms r;
    for (int a = 0; a < static_cast<int>(U.size()); ++a) {
      r.det.push_back(det(a, U[static_cast<std::size_t>(a)]));
      r.sto.push_back(sto(a, U[static_cast<std::size_t>(a)]));
    }
    return r;
  }

private:
  const Tableau& tab_;
  const ModelParams& params_;
  const CovarianceOp& phi_;
  const std::vector<NoiseIncrement>& noise_;
  double t_;
  bool fast_;
};

} // namespace

StepOutcome step_frozen(const SpectralField& un, const Tableau& tab, const ModelParams& params,
                        const CovarianceOp& phi, const std::vector<NoiseIncrement>& noise, double t,
                        const FixedPointConfig& fp, const StepOptions& opts) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("step: t must be positive");
  tab.check_shape();
  params.validate();
  fp.validate();
  const int S = tab.stage_count();
  if (static_cast<int>(noise.size()) != S) throw std::invalid_argument("step: one noise increment per stage required");

  const StageEvaluator ev(tab, params, phi, noise, t, opts.fast_path);
  const double alpha = params.alpha;

  auto iterate = [&](const Stages& U) {
    const StageTerms terms = ev.eval(U);
    Stages next;
    next.reserve(U.size());
    for (int a = 0; a < S; ++a) {
      SpectralField v = un;
      for (int b = 0; b < S; ++b) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        if (tab.a0[ua][ub] != 0.0) v += tab.a0[ua][ub] * terms.det[ub];
        if (tab.a1[ua][ub] != 0.0) v += tab.a1[ua][ub] * terms.sto[ub];
      }
      next.push_back(std::move(v));
    }
    return next;
  };
  auto dist = [&](const Stages& x, const Stages& y) {
    double s = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double d = sobolev_distance(x[a], y[a], alpha);
      s += d * d;
    }
    return std::sqrt(s);
  };

  const SpectralField start = opts.guess == InitialGuess::Propagated ? free_propagator(un, t) : un;
  auto solved = fixed_point_solve(iterate, Stages(static_cast<std::size_t>(S), start), fp, dist);

  const StageTerms terms = ev.eval(solved.solution);
  SpectralField acc = un;
  for (int a = 0; a < S; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (tab.b0[ua] != 0.0) acc += tab.b0[ua] * terms.det[ua];
    if (tab.b1[ua] != 0.0) acc += tab.b1[ua] * terms.sto[ua];
  }
  return StepOutcome{free_propagator(acc, t), solved.iterations, solved.residual, true, std::move(solved.history)};
}

std::vector<NoiseIncrement> stage_noises(const Tableau& tab, const BrownianPath& path, double tn, double t) {
  std::vector<NoiseIncrement> out;
  for (int a = 0; a < tab.stage_count(); ++a)
    out.push_back(stage_noise(path, tn, t, tab.node(a), tab.stages[static_cast<std::size_t>(a)].p));
  return out;
}

StepOutcome step(const SpectralField& un, const Tableau& tab, const ModelParams& params, const CovarianceOp& phi,
                 const BrownianPath& path, double tn, double t, const FixedPointConfig& fp,
                 const StepOptions& opts) {
  tab.check_shape();
  return step_frozen(un, tab, params, phi, stage_noises(tab, path, tn, t), t, fp, opts);
}

double step_bound(double C_R, double C_PhiW) {
  if (!(C_R > 0.0) || !std::isfinite(C_R)) throw std::invalid_argument("step_bound: C_R must be positive");
  if (!(C_PhiW >= 0.0) || !std::isfinite(C_PhiW)) throw std::invalid_argument("step_bound: C_PhiW must be >= 0");
  // sqrt(t) = (-C + sqrt(C^2 + 4R)) / (2R), rationalised to avoid cancellation.
  const double r = 2.0 / (C_PhiW + std::sqrt(C_PhiW * C_PhiW + 4.0 * C_R));
  return r * r;
}

StepConstants estimate_step_constants(const SpectralField& u, const Tableau& tab, const ModelParams& params,
                                      const CovarianceOp& phi, const std::vector<NoiseIncrement>& noise, double t,
                                      std::uint64_t seed, int directions, double probe) {
  if (directions < 1) throw std::invalid_argument("estimate_step_constants: need at least one direction");
  if (!(probe > 0.0)) throw std::invalid_argument("estimate_step_constants: probe must be > 0");
  tab.check_shape();
  const StageEvaluator ev(tab, params, phi, noise, t, true);
  double amax0 = 0.0, amax1 = 0.0;
  for (int a = 0; a < tab.stage_count(); ++a)
    for (int b = 0; b < tab.stage_count(); ++b) {
      amax0 = std::max(amax0, std::abs(tab.a0[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]));
      amax1 = std::max(amax1, std::abs(tab.a1[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]));
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const double scale = probe * std::max(sobolev_norm(u, params.alpha), 1.0);
  const SpectralField f0 = ev.det(0, u), g0 = ev.sto(0, u);
  double lf = 0.0, lg = 0.0;
  for (int d = 0; d < directions; ++d) {
    SpectralField delta(u.grid());
    for (auto& c : delta.coefficients()) c = Complex(gauss(rng), gauss(rng));
    delta *= Complex(scale / sobolev_norm(delta, params.alpha));
    const SpectralField v = u + delta;
    lf = std::max(lf, sobolev_distance(ev.det(0, v), f0, params.alpha) / (t * scale));
    lg = std::max(lg, sobolev_distance(ev.sto(0, v), g0, params.alpha) / (std::sqrt(t) * scale));
  }
  return {amax0 * lf, amax1 * lg};
}

void simulate_into(const SimulationSetup& setup, RunRecord& record) {
  const auto& P = setup.params;
  P.validate();
  setup.fp.validate();
  if (setup.steps < 0) throw std::invalid_argument("simulate: negative step count");
  if (!(setup.dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
  record.seed = setup.path.seed();

  auto row_for = [&](long n, const SpectralField& u, int iters, double res, int rejected) {
    const auto d = diagnostics_row(u, static_cast<double>(n) * setup.dt, P.lambda, P.alpha);
    return RunRow{n, d.time, d.mass, d.energy_h0, d.sobolev, iters, res, rejected};
  };

  SpectralField u = setup.initial;
  record.rows.push_back(row_for(0, u, 0, 0.0, 0));
  if (setup.snapshot_every > 0) record.snapshots.emplace_back(0, u);
  for (long n = 0; n < setup.steps; ++n) {
    const double tn = static_cast<double>(n) * setup.dt;
    try {
      auto out = step(u, setup.tableau, P, setup.phi, setup.path, tn, setup.dt, setup.fp, setup.options);
      u = std::move(out.state);
      record.rows.push_back(row_for(n + 1, u, out.iterations, out.residual, 0));
    } catch (const StepRejected& e) {
      record.rows.push_back(row_for(n + 1, u, e.iterations(), e.residual(), 1));
      throw StepRejected(e.what(), e.residual(), e.iterations(), n + 1);
    }
    if (setup.snapshot_every > 0 && (n + 1) % setup.snapshot_every == 0) record.snapshots.emplace_back(n + 1, u);
  }
}

RunRecord simulate(const SimulationSetup& setup) {
  RunRecord r;
  simulate_into(setup, r);
  return r;
}

BrownianPath path_for_run(std::uint64_t seed, double dt, long steps, int K, int extra_levels, NoiseSymmetry symmetry) {
  if (!(dt > 0.0)) throw std::invalid_argument("path_for_run: dt must be > 0");
  if (extra_levels < 0) throw std::invalid_argument("path_for_run: extra_levels must be >= 0");
  int level = 0;
  while ((1L << level) < std::max(steps, 1L)) ++level;
  const double horizon = dt * static_cast<double>(1L << level);
  return sample_path(seed, horizon, level + extra_levels, K, symmetry);
}

} // namespace snls
