#include "snls/snls.h"

#include "snls/config.hpp"
#include "snls/diagnostics.hpp"
#include "snls/errors.hpp"
#include "snls/experiments.hpp"
#include "snls/integrator.hpp"
#include "snls/io.hpp"

#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct snls_config {
  snls::RunConfig cfg;
};

struct snls_field {
  snls::SpectralField f;
};

struct snls_path {
  snls::BrownianPath p;
};

namespace {

thread_local std::string g_last_error;

snls_status fail(snls_status s, const char* what) {
  g_last_error = what ? what : "";
  return s;
}

template <class F>
snls_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return SNLS_OK;
  } catch (const snls::StepRejected& e) {
    return fail(SNLS_ERR_STEP_REJECTED, e.what());
  } catch (const snls::ExperimentInvalid& e) {
    return fail(SNLS_ERR_EXPERIMENT_INVALID, e.what());
  } catch (const snls::ConfigError& e) {
    return fail(SNLS_ERR_CONFIG, e.what());
  } catch (const snls::IoError& e) {
    return fail(SNLS_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SNLS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SNLS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SNLS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SNLS_ERR_INTERNAL, "unknown error");
  }
}

#define SNLS_REQUIRE(cond, msg) \
  do {                          \
    if (!(cond)) return fail(SNLS_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

void fill(snls_error_summary* out, const snls::ErrorTable& t) {
  out->slope = t.slope;
  out->slope_residual = t.slope_residual;
  out->full_slope = t.full_slope;
  out->fitted_rows = t.fitted_rows;
  out->rows = static_cast<int>(t.rows.size());
  out->degenerate = t.degenerate ? 1 : 0;
}

void write_table(const char* path, const snls::ErrorTable& t) {
  if (!path) return;
  std::ofstream os(path);
  if (!os) throw snls::IoError(std::string("cannot write '") + path + "'");
  snls::write_error_table(os, t);
}

} // namespace

extern "C" {

const char* snls_version(void) { return "0.1.0"; }

const char* snls_last_error(void) { return g_last_error.c_str(); }

const char* snls_status_name(snls_status s) {
  switch (s) {
  case SNLS_OK: return "ok";
  case SNLS_ERR_INVALID_ARGUMENT: return "invalid-argument";
  case SNLS_ERR_CONFIG: return "config-error";
  case SNLS_ERR_IO: return "io-error";
  case SNLS_ERR_STEP_REJECTED: return "step-rejected";
  case SNLS_ERR_EXPERIMENT_INVALID: return "experiment-invalid";
  case SNLS_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

snls_status snls_config_new(snls_config** out) {
  SNLS_REQUIRE(out, "out is null");
  return guarded([&] { *out = new snls_config{}; });
}

snls_status snls_config_load(const char* path, snls_config** out) {
  SNLS_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new snls_config{snls::load_config(path)}; });
}

snls_status snls_config_parse(const char* text, snls_config** out) {
  SNLS_REQUIRE(text && out, "null argument");
  return guarded([&] {
    std::istringstream is(text);
    *out = new snls_config{snls::parse_config(is)};
  });
}

snls_status snls_config_set(snls_config* cfg, const char* key, const char* value) {
  SNLS_REQUIRE(cfg && key && value, "null argument");
  return guarded([&] { snls::apply_config_entry(cfg->cfg, key, value); });
}

snls_status snls_config_set_seed(snls_config* cfg, uint64_t seed) {
  SNLS_REQUIRE(cfg, "null config");
  cfg->cfg.seed = seed;
  return SNLS_OK;
}

void snls_config_free(snls_config* cfg) { delete cfg; }

snls_status snls_field_new(int K, const double* re_im, snls_field** out) {
  SNLS_REQUIRE(out, "out is null");
  return guarded([&] {
    const auto grid = snls::make_grid(K);
    std::vector<snls::Complex> c(static_cast<std::size_t>(grid.mode_count()));
    if (re_im)
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = {re_im[2 * i], re_im[2 * i + 1]};
    *out = new snls_field{snls::SpectralField(grid, std::move(c))};
  });
}

snls_status snls_field_load(const char* path, snls_field** out) {
  SNLS_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new snls_field{snls::load_snapshot(path)}; });
}

snls_status snls_field_save(const snls_field* f, const char* path) {
  SNLS_REQUIRE(f && path, "null argument");
  return guarded([&] { snls::save_snapshot(path, f->f); });
}

int snls_field_mode_cutoff(const snls_field* f) { return f ? f->f.mode_cutoff() : -1; }

snls_status snls_field_get(const snls_field* f, double* re_im, size_t len) {
  SNLS_REQUIRE(f && re_im, "null argument");
  const auto c = f->f.coefficients();
  SNLS_REQUIRE(len >= 2 * c.size(), "buffer too small");
  for (std::size_t i = 0; i < c.size(); ++i) {
    re_im[2 * i] = c[i].real();
    re_im[2 * i + 1] = c[i].imag();
  }
  return SNLS_OK;
}

snls_status snls_field_mass(const snls_field* f, double* out) {
  SNLS_REQUIRE(f && out, "null argument");
  *out = snls::mass(f->f);
  return SNLS_OK;
}

snls_status snls_field_energy(const snls_field* f, double lambda, double* out) {
  SNLS_REQUIRE(f && out, "null argument");
  return guarded([&] { *out = snls::energy_h0(f->f, lambda); });
}

snls_status snls_field_sobolev(const snls_field* f, double alpha, double* out) {
  SNLS_REQUIRE(f && out, "null argument");
  return guarded([&] { *out = snls::sobolev_norm(f->f, alpha); });
}

void snls_field_free(snls_field* f) { delete f; }

snls_status snls_path_sample(uint64_t seed, double horizon, int level, int K, snls_path** out) {
  SNLS_REQUIRE(out, "out is null");
  return guarded([&] { *out = new snls_path{snls::sample_path(seed, horizon, level, K)}; });
}

double snls_path_endpoint(const snls_path* p, int k) {
  if (!p || k < -p->p.mode_cutoff() || k > p->p.mode_cutoff()) return 0.0;
  return p->p.endpoint(k);
}

void snls_path_free(snls_path* p) { delete p; }

snls_step_params snls_step_params_default(void) {
  const snls::ModelParams m;
  const snls::FixedPointConfig fp;
  return {m.lambda, m.kappa, m.alpha, fp.tol, fp.max_iter, fp.divergence_factor};
}

snls_status snls_midpoint_step(const snls_field* u, const snls_step_params* params, const snls_path* path, double tn,
                               double t, snls_field** out, int* iterations, double* residual) {
  SNLS_REQUIRE(u && params && path && out, "null argument");
  SNLS_REQUIRE(path->p.mode_cutoff() == u->f.mode_cutoff(), "path and field mode cutoffs differ");
  return guarded([&] {
    const snls::ModelParams m{params->lambda, params->kappa, params->alpha};
    const snls::FixedPointConfig fp{params->tol, params->max_iter, params->divergence_factor};
    auto r = snls::step(u->f, snls::midpoint_tableau(), m, snls::default_phi(u->f.mode_cutoff()), path->p, tn, t, fp);
    if (iterations) *iterations = r.iterations;
    if (residual) *residual = r.residual;
    *out = new snls_field{std::move(r.state)};
  });
}

snls_status snls_run_conservation(const snls_config* cfg, const char* out_csv, snls_conservation_summary* out) {
  SNLS_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    const auto s = snls::cmd_conservation(cfg->cfg);
    if (out_csv) snls::save_run_record(out_csv, s.record);
    out->max_mass_drift = s.max_mass_drift;
    out->final_mass_drift = s.final_mass_drift;
    out->max_energy_drift = s.max_energy_drift;
    out->rows = static_cast<long>(s.record.rows.size());
    out->completed = s.completed ? 1 : 0;
    out->failed_step = s.failed_step;
  });
}

snls_status snls_run_local_error(const snls_config* cfg, const char* out_csv, snls_error_summary* out) {
  SNLS_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    const auto t = snls::cmd_local_error(cfg->cfg);
    write_table(out_csv, t);
    fill(out, t);
  });
}

snls_status snls_run_kernel_error(const snls_config* cfg, const char* out_csv, snls_error_summary* out) {
  SNLS_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    const auto t = snls::cmd_kernel_error(cfg->cfg);
    write_table(out_csv, t);
    fill(out, t);
  });
}

snls_status snls_run_symplectic(const snls_config* cfg, snls_symplectic_summary* out) {
  SNLS_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    const auto s = snls::cmd_symplectic(cfg->cfg);
    *out = {s.K, s.t, s.h, s.defect_h, s.defect_h2};
  });
}

snls_status snls_run_simulate(const snls_config* cfg, const char* out_csv, long* rows_written) {
  SNLS_REQUIRE(cfg && out_csv, "null argument");
  snls::RunRecord rec;
  const snls_status s = guarded([&] { snls::cmd_simulate(cfg->cfg, &rec); });
  if (s != SNLS_OK && s != SNLS_ERR_STEP_REJECTED) return s;
  const std::string msg = g_last_error;
  const snls_status w = guarded([&] { snls::save_run_record(out_csv, rec); });
  if (w != SNLS_OK) return w;
  if (rows_written) *rows_written = static_cast<long>(rec.rows.size());
  if (s != SNLS_OK) return fail(s, msg.c_str());
  return SNLS_OK;
}

} // extern "C"
