#include "snls/noise.hpp"

#include "snls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace snls {
namespace {

__extension__ typedef __int128 wide_int;

constexpr double kQuantum = 0x1p-48;
constexpr double kScale = 0x1p48;

std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Standard normal keyed by (seed, stream, level, cell). Counter based, so a
// cell's draw never depends on how many other cells were generated.
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t level, std::uint64_t cell) noexcept {
  std::uint64_t h = mix(seed);
  h = mix(h ^ stream);
  h = mix(h ^ (level << 48));
  h = mix(h ^ cell);
  const std::uint64_t g = mix(h ^ 0xd1b54a32d192ed03ULL);
  const double u1 = (static_cast<double>(h >> 11) + 1.0) * 0x1p-53; // (0, 1]
  const double u2 = static_cast<double>(g >> 11) * 0x1p-53;         // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int stream_count(int K, NoiseSymmetry s) { return s == NoiseSymmetry::Even ? K + 1 : 2 * K + 1; }

} // namespace

CovarianceOp::CovarianceOp(int K, std::vector<double> phi) : K_(K), phi_(std::move(phi)) {
  if (K < 1) throw std::invalid_argument("CovarianceOp: K must be >= 1");
  if (static_cast<int>(phi_.size()) != 2 * K + 1)
    throw std::invalid_argument("CovarianceOp: expected " + std::to_string(2 * K + 1) + " coefficients");
  for (int k = -K; k <= K; ++k) {
    if (!std::isfinite((*this)[k])) throw std::invalid_argument("CovarianceOp: non-finite coefficient");
    if ((*this)[k] != (*this)[-k]) throw std::invalid_argument("CovarianceOp: Phi_k must equal Phi_{-k}");
  }
}

double CovarianceOp::l1_norm() const noexcept {
  double s = 0.0;
  for (double p : phi_) s += std::abs(p);
  return s;
}

CovarianceOp default_phi(int K) {
  if (K < 1) throw std::invalid_argument("default_phi: K must be >= 1");
  std::vector<double> phi(static_cast<std::size_t>(2 * K + 1), 0.0);
  for (int k = -K; k <= K; ++k)
    if (k != 0) phi[static_cast<std::size_t>(k + K)] = 1.0 / (static_cast<double>(k) * k);
  return CovarianceOp(K, std::move(phi));
}

const char* to_string(NoiseSymmetry s) noexcept { return s == NoiseSymmetry::Even ? "even" : "independent"; }

NoiseSymmetry parse_noise_symmetry(const std::string& s) {
  if (s == "even") return NoiseSymmetry::Even;
  if (s == "independent") return NoiseSymmetry::Independent;
  throw std::invalid_argument("unknown noise symmetry '" + s + "' (expected even|independent)");
}

int BrownianPath::stream_of(int k) const {
  if (k < -K_ || k > K_) throw std::invalid_argument("BrownianPath: mode " + std::to_string(k) + " outside grid");
  return symmetry_ == NoiseSymmetry::Even ? std::abs(k) : k + K_;
}

void BrownianPath::rebuild_prefix() {
  prefix_.assign(incr_.size(), {});
  for (std::size_t s = 0; s < incr_.size(); ++s) {
    auto& p = prefix_[s];
    p.resize(incr_[s].size() + 1);
    p[0] = 0;
    for (std::size_t j = 0; j < incr_[s].size(); ++j) p[j + 1] = p[j] + incr_[s][j];
  }
}

std::span<const std::int64_t> BrownianPath::cell_increments(int k) const {
  return incr_[static_cast<std::size_t>(stream_of(k))];
}

std::int64_t BrownianPath::value_fixed(int k, std::int64_t j) const {
  if (j < 0 || j > cell_count()) throw std::invalid_argument("BrownianPath: grid index out of range");
  return prefix_[static_cast<std::size_t>(stream_of(k))][static_cast<std::size_t>(j)];
}

double BrownianPath::value(int k, std::int64_t j) const {
  return static_cast<double>(value_fixed(k, j)) * kQuantum;
}

std::int64_t BrownianPath::grid_index(double s) const {
  const double x = s / cell_width();
  const double j = std::nearbyint(x);
  if (!std::isfinite(x) || std::abs(x - j) > 1e-9 * std::max(1.0, std::abs(x)) || j < 0 ||
      j > static_cast<double>(cell_count()))
    throw std::invalid_argument("BrownianPath: time " + std::to_string(s) + " is not on the path grid");
  return static_cast<std::int64_t>(j);
}

BrownianPath sample_path(std::uint64_t seed, double T, int level, int K, NoiseSymmetry symmetry) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("sample_path: horizon must be positive");
  if (level < 0 || level > 40) throw std::invalid_argument("sample_path: level must be in [0, 40]");
  if (K < 1) throw std::invalid_argument("sample_path: K must be >= 1");
  BrownianPath p;
  p.seed_ = seed;
  p.horizon_ = T;
  p.level_ = 0;
  p.K_ = K;
  p.symmetry_ = symmetry;
  const int ns = stream_count(K, symmetry);
  p.incr_.resize(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s)
    p.incr_[static_cast<std::size_t>(s)] = {std::llround(std::sqrt(T) * gaussian(seed, static_cast<std::uint64_t>(s), 0, 0) * kScale)};
  p.rebuild_prefix();
  while (p.level_ < level) p = refine(p);
  return p;
}

BrownianPath refine(const BrownianPath& path) {
  if (path.level_ >= 40) throw std::invalid_argument("refine: level limit reached");
  BrownianPath out = path;
  out.level_ = path.level_ + 1;
  const double half_sd = 0.5 * std::sqrt(path.cell_width()) * kScale;
  for (std::size_t s = 0; s < path.incr_.size(); ++s) {
    const auto& parent = path.incr_[s];
    auto& child = out.incr_[s];
    child.resize(2 * parent.size());
    for (std::size_t j = 0; j < parent.size(); ++j) {
      const double z = gaussian(path.seed_, s, static_cast<std::uint64_t>(out.level_), j);
      const std::int64_t left = std::llround(0.5 * static_cast<double>(parent[j]) + half_sd * z);
      child[2 * j] = left;
      child[2 * j + 1] = parent[j] - left;
    }
  }
  out.rebuild_prefix();
  return out;
}

BrownianPath coarsen(const BrownianPath& path) {
  if (path.level_ == 0) throw std::invalid_argument("coarsen: path is already at level 0");
  BrownianPath out = path;
  out.level_ = path.level_ - 1;
  for (std::size_t s = 0; s < path.incr_.size(); ++s) {
    const auto& fine = path.incr_[s];
    auto& coarse = out.incr_[s];
    coarse.resize(fine.size() / 2);
    for (std::size_t j = 0; j < coarse.size(); ++j) coarse[j] = fine[2 * j] + fine[2 * j + 1];
  }
  out.rebuild_prefix();
  return out;
}

NoiseIncrement increment(const BrownianPath& path, double ta, double tb) {
  const auto ja = path.grid_index(ta), jb = path.grid_index(tb);
  if (jb <= ja) throw std::invalid_argument("increment: interval must have positive length");
  const int K = path.mode_cutoff();
  const double t = static_cast<double>(jb - ja) * path.cell_width();
  const double inv = 1.0 / std::sqrt(t);
  NoiseIncrement x;
  x.step = t;
  x.w.resize(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k)
    x.w[static_cast<std::size_t>(k + K)] =
        static_cast<double>(path.value_fixed(k, jb) - path.value_fixed(k, ja)) * kQuantum * inv;
  return x;
}

NoiseIncrement stage_noise(const BrownianPath& path, double tn, double t, double c, int p) {
  if (!(t > 0.0)) throw std::invalid_argument("stage_noise: t must be > 0");
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("stage_noise: node outside [0, 1]");
  if (p < 0) throw std::invalid_argument("stage_noise: p must be >= 0");
  const int K = path.mode_cutoff();
  NoiseIncrement x;
  x.step = t;
  x.w.assign(static_cast<std::size_t>(2 * K + 1), 0.0);
  const auto ja = path.grid_index(tn);
  path.grid_index(tn + t); // the step itself must be on the grid
  if (c == 0.0) return x;
  const auto jb = path.grid_index(tn + c * t);
  const double h = path.cell_width();
  const double norm = 1.0 / std::pow(t, p + 0.5);
  for (int k = -K; k <= K; ++k) {
    double s = 0.0;
    if (p == 0) {
      s = static_cast<double>(path.value_fixed(k, jb) - path.value_fixed(k, ja)) * kQuantum;
    } else {
      const auto inc = path.cell_increments(k);
      for (auto j = ja; j < jb; ++j) {
        const double a = std::pow(static_cast<double>(j - ja) * h, p);
        const double b = std::pow(static_cast<double>(j + 1 - ja) * h, p);
        s += 0.5 * (a + b) * static_cast<double>(inc[static_cast<std::size_t>(j)]) * kQuantum;
      }
    }
    x.w[static_cast<std::size_t>(k + K)] = s * norm;
  }
  return x;
}

namespace {

// 2 * int_0^t A o dB in units of quantum^2, exact.
wide_int strat_sum(const BrownianPath& path, int ka, int kb, std::int64_t jt) {
  wide_int s = 0;
  for (std::int64_t j = 0; j < jt; ++j) {
    const wide_int a = static_cast<wide_int>(path.value_fixed(ka, j)) + path.value_fixed(ka, j + 1);
    const wide_int db = static_cast<wide_int>(path.value_fixed(kb, j + 1)) - path.value_fixed(kb, j);
    s += a * db;
  }
  return s;
}

double from_wide(wide_int v) { return std::ldexp(static_cast<double>(v), -2 * BrownianPath::kFractionBits - 1); }

} // namespace

StratPair strat_pair_integrals(const BrownianPath& path, int k2, int k3, double t) {
  const auto jt = path.grid_index(t);
  StratPair r;
  r.i23 = from_wide(strat_sum(path, k2, k3, jt));
  r.i32 = from_wide(strat_sum(path, k3, k2, jt));
  r.w2 = path.value(k2, jt);
  r.w3 = path.value(k3, jt);
  return r;
}

Complex symmetrized_midpoint_double(const BrownianPath& path, int k2, int k3, double t) {
  const auto jt = path.grid_index(t);
  const wide_int w2 = path.value_fixed(k2, jt), w3 = path.value_fixed(k3, jt);
  // 2 [I23 - W2 W3 / 2 + I32 - W3 W2 / 2] in quantum^2 units.
  const wide_int s = strat_sum(path, k2, k3, jt) + strat_sum(path, k3, k2, jt) - 2 * w2 * w3;
  return {from_wide(s), 0.0};
}

PathManifest make_manifest(const BrownianPath& path) {
  PathManifest m;
  m.seed = path.seed();
  m.K = path.mode_cutoff();
  m.level = path.level();
  m.horizon = path.horizon();
  for (int k = -m.K; k <= m.K; ++k) m.endpoints.emplace_back(k, path.endpoint(k));
  return m;
}

void write_manifest(std::ostream& os, const PathManifest& m) {
  os << std::setprecision(17);
  os << m.seed << ',' << m.K << ',' << m.level << ',' << m.horizon << '\n';
  for (const auto& [k, w] : m.endpoints) os << k << ',' << w << '\n';
}

PathManifest read_manifest(std::istream& is) {
  PathManifest m;
  std::string line;
  if (!std::getline(is, line)) throw IoError("manifest: empty input");
  {
    std::istringstream ss(line);
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ss >> m.seed >> c1 >> m.K >> c2 >> m.level >> c3 >> m.horizon) || c1 != ',' || c2 != ',' || c3 != ',')
      throw IoError("manifest: malformed header '" + line + "'");
  }
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    int k = 0;
    char c = 0;
    double w = 0.0;
    if (!(ss >> k >> c >> w) || c != ',') throw IoError("manifest: malformed line " + std::to_string(lineno));
    m.endpoints.emplace_back(k, w);
  }
  return m;
}

BrownianPath path_from_manifest(const PathManifest& m) {
  BrownianPath p = [&] {
    try {
      return sample_path(m.seed, m.horizon, m.level, m.K);
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("manifest: ") + e.what());
    }
  }();
  for (const auto& [k, w] : m.endpoints) {
    if (k < -m.K || k > m.K) throw IoError("manifest: mode " + std::to_string(k) + " outside grid");
    const double v = p.endpoint(k);
    if (std::abs(v - w) > 1e-14 * std::max(1.0, std::abs(v)))
      throw IoError("manifest: endpoint of mode " + std::to_string(k) + " does not match regenerated path");
  }
  return p;
}

} // namespace snls
