#include "snls/experiments.hpp"

#include "snls/diagnostics.hpp"
#include "snls/errors.hpp"
#include "snls/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace snls {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finaliser over (base, index)
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(base ^ mix(index + 0x632be59bd9b4e019ULL));
}

SpectralField initial_data(const std::string& id, const TorusGrid& grid, std::uint64_t seed) {
  const int K = grid.mode_cutoff();
  if (id == "smooth") {
    if (K < 3) throw ConfigError("initial 'smooth' needs K >= 3");
    SpectralField u(grid);
    u[0] = 0.5;
    u[1] = 0.4;
    u[-1] = Complex(0.0, 0.3);
    u[2] = 0.2;
    u[-3] = 0.1;
    u *= Complex(1.0 / sobolev_norm(u, 2.0));
    return u;
  }
  if (id.rfind("rough-", 0) == 0) {
    const std::string tail = id.substr(6);
    double s = 0.0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), s);
    if (ec != std::errc() || ptr != tail.data() + tail.size() || !std::isfinite(s))
      throw ConfigError("initial: bad regularity in '" + id + "'");
    std::mt19937_64 rng(derive_seed(seed, 0x726f756768ULL));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    SpectralField u(grid);
    for (int k = -K; k <= K; ++k)
      u[k] = std::polar(std::pow(1.0 + static_cast<double>(k) * k, -(s + 0.5) / 2.0), phase(rng));
    u *= Complex(1.0 / std::sqrt(mass(u)));
    return u;
  }
  if (id.rfind("snapshot:", 0) == 0) {
    SpectralField u = load_snapshot(id.substr(9));
    if (u.mode_cutoff() != K)
      throw ConfigError("initial: snapshot has K=" + std::to_string(u.mode_cutoff()) + ", config has K=" + std::to_string(K));
    return u;
  }
  throw ConfigError("initial: unknown initial data '" + id + "' (smooth | rough-<s> | snapshot:<path>)");
}

SpectralField reference_solution(const SpectralField& u0, const ModelParams& params, const CovarianceOp& phi,
                                 const BrownianPath& path, double t_end, const FixedPointConfig& fp) {
  const double h = path.cell_width();
  const auto n = path.grid_index(t_end);
  if (n < 256) throw std::invalid_argument("reference_solution: path resolves fewer than 256 substeps");
  const Tableau mid = midpoint_tableau();
  SpectralField u = u0;
  for (std::int64_t j = 0; j < n; ++j) u = step(u, mid, params, phi, path, static_cast<double>(j) * h, h, fp).state;
  return u;
}

void fit_slope(ErrorTable& table) {
  auto fit = [&](bool only_clean, double* residual) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : table.rows) {
      const double e = table.fit_max ? r.max : r.rms;
      if (!(e > 0.0) || !std::isfinite(e) || (only_clean && r.degenerate)) continue;
      const double x = std::log2(r.t), y = std::log2(e);
      pts.emplace_back(x, y);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n < 2) return std::make_pair(std::numeric_limits<double>::quiet_NaN(), n);
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    if (residual) {
      double ss = 0.0;
      for (const auto& [x, y] : pts) ss += (y - icpt - slope * x) * (y - icpt - slope * x);
      *residual = std::sqrt(ss / n);
    }
    return std::make_pair(slope, n);
  };
  double res = 0.0;
  const auto [slope, n] = fit(true, &res);
  table.slope = slope;
  table.fitted_rows = n;
  table.slope_residual = n >= 2 ? res : std::numeric_limits<double>::quiet_NaN();
  table.degenerate = n < 2;
  table.full_slope = fit(false, nullptr).first;
}

SimulationSetup make_setup(const RunConfig& cfg) {
  cfg.validate();
  const std::uint64_t seed = cfg.require_seed();
  const TorusGrid grid = make_grid(cfg.K);
  SimulationSetup s(initial_data(cfg.initial, grid, seed), default_phi(cfg.K),
                    path_for_run(seed, cfg.dt, cfg.steps, cfg.K, 0, cfg.noise));
  s.tableau = cfg.make_tableau();
  s.params = cfg.model();
  s.dt = cfg.dt;
  s.steps = cfg.steps;
  s.fp = cfg.fp;
  s.options.guess = cfg.guess;
  s.snapshot_every = cfg.snapshot_every;
  return s;
}

ErrorTable cmd_local_error(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.samples < 16) throw ExperimentInvalid("local-error: needs at least 16 samples, got " + std::to_string(cfg.samples));
  const std::uint64_t seed = cfg.require_seed();
  const TorusGrid grid = make_grid(cfg.K);
  const SpectralField u0 = initial_data(cfg.initial, grid, seed);
  const CovarianceOp phi = default_phi(cfg.K);
  const Tableau tab = cfg.make_tableau();
  const ModelParams params = cfg.model();
  const double scale = std::max(sobolev_norm(u0, params.alpha), 1.0);
  const int level = std::max(cfg.refinement, 8);

  ErrorTable table;
  table.label = "local-error tableau=" + tab.name + " K=" + std::to_string(cfg.K) + " samples=" +
                std::to_string(cfg.samples) + " alpha=" + std::to_string(params.alpha);
  for (int e = cfg.t_max_exp; e <= cfg.t_min_exp; ++e) {
    const double t = std::ldexp(1.0, -e);
    ErrorRow row;
    row.t = t;
    double sq = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
      const BrownianPath path = sample_path(derive_seed(seed, static_cast<std::uint64_t>(s)), t, level, cfg.K, cfg.noise);
      try {
        const SpectralField coarse = step(u0, tab, params, phi, path, 0.0, t, cfg.fp, {cfg.guess, true}).state;
        const SpectralField ref = reference_solution(u0, params, phi, path, t, cfg.fp);
        const double err = sobolev_distance(coarse, ref, params.alpha);
        sq += err * err;
        row.max = std::max(row.max, err);
        ++row.samples;
      } catch (const StepRejected&) {
        ++row.rejected;
      }
    }
    if (row.rejected * 5 > cfg.samples)
      throw ExperimentInvalid("local-error: " + std::to_string(row.rejected) + " of " + std::to_string(cfg.samples) +
                              " samples rejected at t=2^-" + std::to_string(e));
    row.rms = row.samples > 0 ? std::sqrt(sq / row.samples) : 0.0;
    row.degenerate = row.samples == 0 || row.rms <= 1e-14 * scale;
    table.rows.push_back(row);
  }
  fit_slope(table);
  return table;
}

ErrorTable cmd_kernel_error(const RunConfig& cfg) {
  cfg.validate();
  const std::uint64_t seed = cfg.require_seed();
  const KernelSpec spec = KernelSpec::with_default_points(cfg.kernel_d);
  const int B = cfg.mode_bound;
  std::mt19937_64 rng(derive_seed(seed, 0x6b65726eULL));
  std::uniform_int_distribution<int> pick(-B, B);
  std::vector<ModeQuad> quads;
  while (static_cast<int>(quads.size()) < cfg.quads) {
    const int k = pick(rng), k1 = pick(rng), k2 = pick(rng);
    const int k3 = k + k1 - k2;
    if (k3 >= -B && k3 <= B) quads.push_back(ModeQuad::checked(k, k1, k2, k3));
  }
  ErrorTable table;
  table.fit_max = true;
  table.label = "kernel-error d=" + std::to_string(cfg.kernel_d) + " mode_bound=" + std::to_string(B) +
                " quads=" + std::to_string(cfg.quads);
  constexpr int kSamples = 64;
  for (int e = cfg.t_max_exp; e <= cfg.t_min_exp; ++e) {
    const double t = std::ldexp(1.0, -e);
    ErrorRow row;
    row.t = t;
    double sq = 0.0;
    for (const auto& q : quads) {
      double worst = 0.0;
      for (int j = 0; j <= kSamples; ++j) {
        const double s = t * j / kSamples;
        worst = std::max(worst, std::abs(kernel_K2d(spec, q, s, t) - kernel_exact(q, s)));
      }
      sq += worst * worst;
      row.max = std::max(row.max, worst);
      ++row.samples;
    }
    row.rms = std::sqrt(sq / row.samples);
    // Asymptotic regime needs |omega| t = 2 B^2 t <= 1 for the largest rates.
    row.degenerate = row.max == 0.0 || 2.0 * B * B * t > 1.0;
    table.rows.push_back(row);
  }
  fit_slope(table);
  return table;
}

ConservationSummary cmd_conservation(const RunConfig& cfg) {
  const SimulationSetup setup = make_setup(cfg);
  ConservationSummary out;
  out.record.header = cfg.echo();
  try {
    simulate_into(setup, out.record);
  } catch (const StepRejected& e) {
    out.completed = false;
    out.failed_step = e.step_index();
  }
  const auto& rows = out.record.rows;
  const double m0 = rows.front().mass, h0 = rows.front().energy_h0;
  for (const auto& r : rows) {
    if (r.rejected) continue;
    out.final_mass_drift = std::abs(r.mass - m0) / m0;
    out.max_mass_drift = std::max(out.max_mass_drift, out.final_mass_drift);
    out.max_energy_drift = std::max(out.max_energy_drift, std::abs(r.energy_h0 - h0) / std::max(std::abs(h0), 1e-300));
  }
  return out;
}

SymplecticSummary cmd_symplectic(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.K > 6) throw ConfigError("symplectic: K must be <= 6 (Jacobian cost), got " + std::to_string(cfg.K));
  const std::uint64_t seed = cfg.require_seed();
  const TorusGrid grid = make_grid(cfg.K);
  const SpectralField u0 = initial_data(cfg.initial, grid, seed);
  const CovarianceOp phi = default_phi(cfg.K);
  const Tableau tab = cfg.make_tableau();
  const ModelParams params = cfg.model();
  const auto noise = stage_noises(tab, path_for_run(seed, cfg.dt, 1, cfg.K, 0, cfg.noise), 0.0, cfg.dt);
  const StepOptions opts{cfg.guess, true};
  const StepMap map = [&](const SpectralField& u) {
    return step_frozen(u, tab, params, phi, noise, cfg.dt, cfg.fp, opts).state;
  };
  SymplecticSummary s;
  s.K = cfg.K;
  s.t = cfg.dt;
  s.h = cfg.fd_h;
  s.defect_h = symplectic_defect(map, u0, cfg.fd_h);
  s.defect_h2 = symplectic_defect(map, u0, 0.5 * cfg.fd_h);
  return s;
}

RunRecord cmd_simulate(const RunConfig& cfg, RunRecord* record_out) {
  const SimulationSetup setup = make_setup(cfg);
  RunRecord rec;
  rec.header = cfg.echo();
  try {
    simulate_into(setup, rec);
  } catch (...) {
    if (record_out) *record_out = rec;
    throw;
  }
  if (record_out) *record_out = rec;
  return rec;
}

} // namespace snls
