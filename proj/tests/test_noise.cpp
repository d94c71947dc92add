#include "snls/errors.hpp"
#include "snls/noise.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

using snls::BrownianPath;
using snls::NoiseSymmetry;

TEST_CASE("covariance operator", "[noise]") {
  CHECK_THROWS_AS(snls::CovarianceOp(2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(snls::CovarianceOp(1, {1, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(snls::CovarianceOp(1, {NAN, 0, NAN}), std::invalid_argument);
  const auto phi = snls::default_phi(3);
  CHECK(phi[0] == 0.0);
  CHECK(phi[2] == 0.25);
  CHECK(phi[-3] == phi[3]);
  CHECK(phi.l1_norm() == Catch::Approx(2 * (1 + 0.25 + 1.0 / 9)));
}

TEST_CASE("symmetry names round trip", "[noise]") {
  for (auto s : {NoiseSymmetry::Even, NoiseSymmetry::Independent})
    CHECK(snls::parse_noise_symmetry(snls::to_string(s)) == s);
  CHECK_THROWS(snls::parse_noise_symmetry("odd"));
}

TEST_CASE("sample_path argument checks", "[noise]") {
  CHECK_THROWS_AS(snls::sample_path(1, 0.0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(snls::sample_path(1, 1.0, -1, 2), std::invalid_argument);
  CHECK_THROWS_AS(snls::sample_path(1, 1.0, 41, 2), std::invalid_argument);
  CHECK_THROWS_AS(snls::sample_path(1, 1.0, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(snls::coarsen(snls::sample_path(1, 1.0, 0, 2)), std::invalid_argument);
}

TEST_CASE("paths are deterministic in the seed and start at zero", "[noise]") {
  const auto a = snls::sample_path(42, 1.0, 6, 4);
  const auto b = snls::sample_path(42, 1.0, 6, 4);
  const auto c = snls::sample_path(43, 1.0, 6, 4);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  for (int k = -4; k <= 4; ++k) CHECK(a.value_fixed(k, 0) == 0);
}

TEST_CASE("even symmetry ties W_-k to W_k", "[noise]") {
  const auto e = snls::sample_path(5, 1.0, 5, 3, NoiseSymmetry::Even);
  const auto i = snls::sample_path(5, 1.0, 5, 3, NoiseSymmetry::Independent);
  for (int k = 1; k <= 3; ++k) {
    CHECK(e.endpoint(k) == e.endpoint(-k));
    CHECK(i.endpoint(k) != i.endpoint(-k));
  }
}

TEST_CASE("refine and coarsen are inverse; refinement keeps coarse values", "[noise]") {
  const auto p = snls::sample_path(9, 0.5, 4, 3);
  const auto r = snls::refine(p);
  CHECK(r == snls::sample_path(9, 0.5, 5, 3));
  CHECK(snls::coarsen(r) == p);
  for (int k = -3; k <= 3; ++k)
    for (std::int64_t j = 0; j <= p.cell_count(); ++j) CHECK(r.value_fixed(k, 2 * j) == p.value_fixed(k, j));
  CHECK(snls::refine(snls::refine(p)) == snls::sample_path(9, 0.5, 6, 3));
}

TEST_CASE("grid index and increments", "[noise]") {
  const auto p = snls::sample_path(3, 1.0, 4, 2);
  CHECK(p.grid_index(0.25) == 4);
  CHECK_THROWS_AS(p.grid_index(0.3), std::invalid_argument);
  CHECK_THROWS_AS(snls::increment(p, 0.25, 0.25), std::invalid_argument);
  const auto x = snls::increment(p, 0.25, 0.75);
  CHECK(x.step == Catch::Approx(0.5));
  CHECK(x[1] == Catch::Approx((p.value(1, 12) - p.value(1, 4)) / std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("stage_noise reduces to the plain increment for p = 0", "[noise]") {
  const auto p = snls::sample_path(4, 1.0, 8, 3);
  const auto x = snls::stage_noise(p, 0.25, 0.25, 1.0, 0);
  const auto y = snls::increment(p, 0.25, 0.5);
  for (int k = -3; k <= 3; ++k) CHECK(x[k] == Catch::Approx(y[k]).epsilon(1e-14));
  const auto h = snls::stage_noise(p, 0.25, 0.25, 0.5, 0);
  CHECK(h.step == 0.25);
  for (int k = -3; k <= 3; ++k) CHECK(h[k] == Catch::Approx((p.value(k, 96) - p.value(k, 64)) / 0.5).epsilon(1e-13));
}

TEST_CASE("stage_noise with p = 1 matches a direct trapezoid", "[noise]") {
  const auto p = snls::sample_path(6, 1.0, 6, 2);
  const double tn = 0.25, t = 0.5, h = p.cell_width();
  const auto x = snls::stage_noise(p, tn, t, 1.0, 1);
  for (int k = -2; k <= 2; ++k) {
    double sum = 0;
    for (std::int64_t j = 16; j < 48; ++j) {
      const double s0 = j * h - tn, s1 = (j + 1) * h - tn;
      sum += 0.5 * (s0 + s1) * (p.value(k, j + 1) - p.value(k, j));
    }
    CHECK(x[k] == Catch::Approx(sum / std::pow(t, 1.5)).epsilon(1e-12));
  }
}

TEST_CASE("increments have Brownian statistics", "[noise][statistics]") {
  // 4000 cells of width 2^-12 on [0, 1]: normalised increments are N(0, 1).
  const auto p = snls::sample_path(2024, 1.0, 12, 1);
  const auto inc = p.cell_increments(1);
  const double scale = std::ldexp(1.0, -BrownianPath::kFractionBits) / std::sqrt(p.cell_width());
  double m = 0, v = 0, lag = 0;
  const double n = static_cast<double>(inc.size());
  for (std::size_t i = 0; i < inc.size(); ++i) m += inc[i] * scale;
  m /= n;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    const double z = inc[i] * scale - m;
    v += z * z;
    if (i + 1 < inc.size()) lag += z * (inc[i + 1] * scale - m);
  }
  v /= n;
  lag /= n;
  CHECK(std::abs(m) < 4.0 / std::sqrt(n));
  CHECK(std::abs(v - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(lag) < 4.0 / std::sqrt(n));

  // endpoints over many seeds: Var W(T) = T
  double s2 = 0;
  const int seeds = 2000;
  for (int s = 0; s < seeds; ++s) {
    const double w = snls::sample_path(static_cast<std::uint64_t>(s), 2.0, 3, 1).endpoint(1);
    s2 += w * w;
  }
  CHECK(std::abs(s2 / seeds - 2.0) < 4.0 * 2.0 * std::sqrt(2.0 / seeds));
}

TEST_CASE("Stratonovich pair identity and symmetrised double integral", "[noise]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = snls::sample_path(seed, 1.0, 10, 3, seed % 2 ? NoiseSymmetry::Even : NoiseSymmetry::Independent);
    for (auto [k2, k3] : {std::pair{1, 2}, std::pair{-3, 2}, std::pair{2, 2}, std::pair{0, 1}}) {
      const auto r = snls::strat_pair_integrals(p, k2, k3, 0.5);
      const double scale = std::max(1.0, std::abs(r.w2 * r.w3));
      CHECK(std::abs(r.i23 + r.i32 - r.w2 * r.w3) <= 1e-13 * scale);
      CHECK(std::abs(snls::symmetrized_midpoint_double(p, k2, k3, 0.5)) <= 1e-13);
    }
  }
}

TEST_CASE("manifest round trip and tamper detection", "[noise]") {
  const auto p = snls::sample_path(77, 0.5, 5, 3);
  std::stringstream ss;
  snls::write_manifest(ss, snls::make_manifest(p));
  const auto m = snls::read_manifest(ss);
  CHECK(m.seed == 77);
  CHECK(m.K == 3);
  CHECK(m.level == 5);
  CHECK(snls::path_from_manifest(m) == p);

  auto bad = m;
  bad.endpoints[1].second += 1e-6;
  CHECK_THROWS_AS(snls::path_from_manifest(bad), snls::IoError);
  std::istringstream junk("not,a,manifest\n");
  CHECK_THROWS_AS(snls::read_manifest(junk), snls::IoError);
}
