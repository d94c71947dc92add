#pragma once

#include <stdexcept>
#include <string>

namespace snls {

// Invalid arguments are reported with std::invalid_argument throughout.

/// Raised when the implicit stage solve fails to contract: either the
/// iteration cap was reached or the residual grew past the divergence factor.
/// Usually means the step violates the (random) step-size bound.
class StepRejected : public std::runtime_error {
public:
  StepRejected(const std::string& what, double residual, int iterations, long step_index = -1)
      : std::runtime_error(what), residual_(residual), iterations_(iterations), step_index_(step_index) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }
  /// Index of the failing step inside a run, or -1 for a standalone step.
  long step_index() const noexcept { return step_index_; }

private:
  double residual_;
  int iterations_;
  long step_index_;
};

/// An experiment could not produce a meaningful result (e.g. too many
/// rejected steps in a convergence study).
class ExperimentInvalid : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace snls
