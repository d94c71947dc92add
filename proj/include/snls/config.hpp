#pragma once

#include "snls/integrator.hpp"
#include "snls/noise.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace snls {

/// Flat key=value run configuration. Lines starting with '#' and blank lines
/// are ignored; unknown keys and malformed values raise ConfigError.
struct RunConfig {
  int K = 16;
  double dt = 1e-2;
  long steps = 100;
  double lambda = 1.0;
  double kappa = 1.0;
  double alpha = 2.0;
  std::optional<std::uint64_t> seed;
  std::string tableau = "midpoint";
  int kernel_d = 1;
  FixedPointConfig fp;
  InitialGuess guess = InitialGuess::Previous;
  NoiseSymmetry noise = NoiseSymmetry::Even;
  std::string initial = "smooth"; ///< smooth | rough-<s> | snapshot:<path>
  long snapshot_every = 0;
  std::string output;

  // experiment knobs
  int samples = 64;
  int refinement = 8;   ///< reference substeps per coarse step = 2^refinement
  int t_max_exp = 4;    ///< largest step 2^-t_max_exp
  int t_min_exp = 9;    ///< smallest step 2^-t_min_exp
  int mode_bound = 8;   ///< |k| bound of random quads (kernel-error)
  int quads = 64;
  double fd_h = 1e-5;

  /// Seed or ConfigError("seed is mandatory").
  std::uint64_t require_seed() const;
  /// Range and consistency checks; throws ConfigError.
  void validate() const;
  ModelParams model() const { return {lambda, kappa, alpha}; }
  Tableau make_tableau() const;
  /// key=value lines, in a fixed order, reproducing this config.
  std::vector<std::string> echo() const;
};

RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);
/// Applies one key=value assignment. Throws ConfigError.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

} // namespace snls
