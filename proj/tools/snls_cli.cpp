// Command-line front end. Talks to the library only through the C interface.

#include "snls/snls.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

namespace {

int exit_code(snls_status s) {
  switch (s) {
  case SNLS_OK: return 0;
  case SNLS_ERR_EXPERIMENT_INVALID:
  case SNLS_ERR_STEP_REJECTED: return 2;
  default: return 1;
  }
}

int report(snls_status s) {
  if (s != SNLS_OK) std::fprintf(stderr, "error (%s): %s\n", snls_status_name(s), snls_last_error());
  return exit_code(s);
}

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct ConfigHandle {
  snls_config* ptr = nullptr;
  ~ConfigHandle() { snls_config_free(ptr); }
};

snls_status open_config(const Common& c, ConfigHandle& h) {
  snls_status s = c.config.empty() ? snls_config_new(&h.ptr) : snls_config_load(c.config.c_str(), &h.ptr);
  if (s != SNLS_OK) return s;
  if (c.seed) s = snls_config_set_seed(h.ptr, *c.seed);
  return s;
}

const char* out_or_null(const Common& c) { return c.out.empty() ? nullptr : c.out.c_str(); }

int run_simulate(const Common& c) {
  ConfigHandle h;
  if (auto s = open_config(c, h); s != SNLS_OK) return report(s);
  if (c.out.empty()) {
    std::fprintf(stderr, "error: simulate needs --out\n");
    return 1;
  }
  long rows = 0;
  const auto s = snls_run_simulate(h.ptr, c.out.c_str(), &rows);
  if (s == SNLS_OK || s == SNLS_ERR_STEP_REJECTED) std::printf("rows=%ld out=%s\n", rows, c.out.c_str());
  return report(s);
}

int run_conservation(const Common& c) {
  ConfigHandle h;
  if (auto s = open_config(c, h); s != SNLS_OK) return report(s);
  snls_conservation_summary r{};
  const auto s = snls_run_conservation(h.ptr, out_or_null(c), &r);
  if (s != SNLS_OK) return report(s);
  std::printf("max_mass_drift=%.6e final_mass_drift=%.6e max_energy_drift=%.6e rows=%ld completed=%d\n",
              r.max_mass_drift, r.final_mass_drift, r.max_energy_drift, r.rows, r.completed);
  if (!r.completed) {
    std::fprintf(stderr, "step %ld rejected\n", r.failed_step);
    return 2;
  }
  return 0;
}

int run_table(const Common& c, bool local) {
  ConfigHandle h;
  if (auto s = open_config(c, h); s != SNLS_OK) return report(s);
  snls_error_summary r{};
  const auto s = local ? snls_run_local_error(h.ptr, out_or_null(c), &r) : snls_run_kernel_error(h.ptr, out_or_null(c), &r);
  if (s != SNLS_OK) return report(s);
  std::printf("slope=%.4f residual=%.4f fitted_rows=%d/%d full_slope=%.4f degenerate=%d\n", r.slope, r.slope_residual,
              r.fitted_rows, r.rows, r.full_slope, r.degenerate);
  return 0;
}

int run_symplectic(const Common& c) {
  ConfigHandle h;
  if (auto s = open_config(c, h); s != SNLS_OK) return report(s);
  snls_symplectic_summary r{};
  const auto s = snls_run_symplectic(h.ptr, &r);
  if (s != SNLS_OK) return report(s);
  std::printf("K=%d t=%.3e h=%.3e defect=%.6e defect_h2=%.6e\n", r.K, r.t, r.h, r.defect_h, r.defect_h2);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mass-conserving time stepping for the cubic Schroedinger equation with multiplicative noise on the circle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(snls_version()));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "key=value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "output CSV path");
    sub->add_option("--seed", common.seed, "RNG seed (overrides the config)");
  };

  auto* sim = app.add_subcommand("simulate", "run the scheme and write a run record");
  auto* loc = app.add_subcommand("local-error", "one-step strong error against a refined reference");
  auto* ker = app.add_subcommand("kernel-error", "interpolated kernel error vs step size");
  auto* con = app.add_subcommand("conservation", "mass and energy drift over a run");
  auto* sym = app.add_subcommand("symplectic", "Jacobian symplecticity defect of one frozen-noise step");
  for (auto* s : {sim, loc, ker, con, sym}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*sim) return run_simulate(common);
  if (*loc) return run_table(common, true);
  if (*ker) return run_table(common, false);
  if (*con) return run_conservation(common);
  if (*sym) return run_symplectic(common);
  return 1;
}
