#pragma once

#include "snls/torus.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace snls {

/// Real, even covariance coefficients Phi_k, k = -K..K.
class CovarianceOp {
public:
  /// Throws std::invalid_argument unless size is 2K+1, entries are finite and
  /// Phi_k == Phi_{-k}.
  CovarianceOp(int K, std::vector<double> phi);

  int mode_cutoff() const noexcept { return K_; }
  double operator[](int k) const { return phi_[static_cast<std::size_t>(k + K_)]; }
  std::span<const double> coefficients() const noexcept { return phi_; }

  /// sum_k |Phi_k|: bound on the multiplier of a normalised increment.
  double l1_norm() const noexcept;

private:
  int K_;
  std::vector<double> phi_;
};

/// Phi_0 = 0, Phi_k = 1/k^2.
CovarianceOp default_phi(int K);

/// How per-mode Wiener processes are tied together.
/// Even: W_{-k} = W_k (one real process per |k|). Real-valued noise field and
///       the pairing Re<v, P(v)> vanishes identically.
/// Independent: one real process per k. Kept as a control; the pairing does
///       not vanish for general v.
enum class NoiseSymmetry { Even, Independent };

const char* to_string(NoiseSymmetry s) noexcept;
NoiseSymmetry parse_noise_symmetry(const std::string& s);

/// Per-mode real Wiener paths on [0, T] resolved on a dyadic grid of 2^L
/// cells. Values are stored in fixed point (quantum 2^-48) so coarse
/// increments are exact sums of their children and discrete Stratonovich
/// sums telescope exactly.
class BrownianPath {
public:
  static constexpr int kFractionBits = 48;

  std::uint64_t seed() const noexcept { return seed_; }
  double horizon() const noexcept { return horizon_; }
  int level() const noexcept { return level_; }
  int mode_cutoff() const noexcept { return K_; }
  NoiseSymmetry symmetry() const noexcept { return symmetry_; }
  std::int64_t cell_count() const noexcept { return std::int64_t{1} << level_; }
  double cell_width() const noexcept { return horizon_ / static_cast<double>(cell_count()); }

  /// Raw fixed-point increments of the stream driving mode k.
  std::span<const std::int64_t> cell_increments(int k) const;
  /// Fixed-point W_k at grid point j (0 <= j <= cell_count()).
  std::int64_t value_fixed(int k, std::int64_t j) const;
  double value(int k, std::int64_t j) const;
  /// W_k(T).
  double endpoint(int k) const { return value(k, cell_count()); }

  /// Grid index of time s; throws std::invalid_argument if s is not a grid point.
  std::int64_t grid_index(double s) const;

  friend bool operator==(const BrownianPath&, const BrownianPath&) = default;

private:
  friend BrownianPath sample_path(std::uint64_t, double, int, int, NoiseSymmetry);
  friend BrownianPath refine(const BrownianPath&);
  friend BrownianPath coarsen(const BrownianPath&);

  BrownianPath() = default;
  int stream_of(int k) const;
  void rebuild_prefix();

  std::uint64_t seed_ = 0;
  double horizon_ = 1.0;
  int level_ = 0;
  int K_ = 1;
  NoiseSymmetry symmetry_ = NoiseSymmetry::Even;
  std::vector<std::vector<std::int64_t>> incr_;   // [stream][cell]
  std::vector<std::vector<std::int64_t>> prefix_; // [stream][grid point]
};

/// Throws std::invalid_argument for T <= 0, level < 0 or level > 40, K < 1.
BrownianPath sample_path(std::uint64_t seed, double T, int level, int K,
                         NoiseSymmetry symmetry = NoiseSymmetry::Even);
/// One Brownian-bridge split of every cell. refine(sample_path(s,T,L,K)) ==
/// sample_path(s,T,L+1,K).
BrownianPath refine(const BrownianPath& path);
/// Pairwise sums; inverse of refine. Throws at level 0.
BrownianPath coarsen(const BrownianPath& path);

/// Normalised per-mode noise values X_k for one step of size t.
struct NoiseIncrement {
  std::vector<double> w; // indexed k + K
  double step = 0.0;

  int mode_cutoff() const noexcept { return static_cast<int>(w.size() / 2); }
  double operator[](int k) const { return w[static_cast<std::size_t>(k + mode_cutoff())]; }
};

/// (W_k(tb) - W_k(ta)) / sqrt(tb - ta). Endpoints must be grid points, ta < tb.
NoiseIncrement increment(const BrownianPath& path, double ta, double tb);

/// Stage noise t^{-(p+1/2)} int_{tn}^{tn + c t} (s - tn)^p o dW_k(s) by the
/// trapezoidal rule on the path grid. p = 0 reduces to the plain increment
/// over [tn, tn + c t] normalised by sqrt(t). The result carries step t.
NoiseIncrement stage_noise(const BrownianPath& path, double tn, double t, double c, int p);

/// Discrete Stratonovich integrals on [0, t]:
///   i23 = int W_{k2} o dW_{k3},  i32 = int W_{k3} o dW_{k2}.
struct StratPair {
  double i23 = 0.0;
  double i32 = 0.0;
  double w2 = 0.0; // W_{k2}(t)
  double w3 = 0.0; // W_{k3}(t)
};

StratPair strat_pair_integrals(const BrownianPath& path, int k2, int k3, double t);

/// int_0^t (W2 - W2(t)/2) o dW3 + int_0^t (W3 - W3(t)/2) o dW2, evaluated in
/// exact integer arithmetic before rounding.
Complex symmetrized_midpoint_double(const BrownianPath& path, int k2, int k3, double t);

/// Reproducibility record: header values `seed,K,level,horizon` then `k,W_k(T)`.
struct PathManifest {
  std::uint64_t seed = 0;
  int K = 1;
  int level = 0;
  double horizon = 1.0;
  std::vector<std::pair<int, double>> endpoints;
};

PathManifest make_manifest(const BrownianPath& path);
void write_manifest(std::ostream& os, const PathManifest& m);
/// Throws IoError on malformed input.
PathManifest read_manifest(std::istream& is);
/// Regenerates the (Even) path and checks recorded endpoints; throws IoError
/// on mismatch.
BrownianPath path_from_manifest(const PathManifest& m);

} // namespace snls
