#include "oracles.hpp"

#include "snls/config.hpp"
#include "snls/errors.hpp"
#include "snls/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using snls::ConfigError;
using snls::IoError;

TEST_CASE("config parsing", "[config]") {
  std::istringstream is("# comment\n\nK = 8\ndt=0.005\nseed=12\ntableau=explicit\nnoise=independent\nguess=propagated\n"
                        "fp_tol=1e-10\nkernel_d=2\n");
  const auto c = snls::parse_config(is);
  CHECK(c.K == 8);
  CHECK(c.dt == 0.005);
  CHECK(c.require_seed() == 12);
  CHECK(c.tableau == "explicit");
  CHECK(c.noise == snls::NoiseSymmetry::Independent);
  CHECK(c.guess == snls::InitialGuess::Propagated);
  CHECK(c.fp.tol == 1e-10);
  CHECK(c.make_tableau().kernel.order() == 2);
}

TEST_CASE("config errors", "[config]") {
  auto parse = [](const char* text) {
    std::istringstream is(text);
    return snls::parse_config(is);
  };
  CHECK_THROWS_AS(parse("bogus=1\n"), ConfigError);
  CHECK_THROWS_AS(parse("K=eight\n"), ConfigError);
  CHECK_THROWS_AS(parse("K=8x\n"), ConfigError);
  CHECK_THROWS_AS(parse("just a line\n"), ConfigError);
  CHECK_THROWS_AS(parse("dt=-1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("noise=odd\n"), ConfigError);
  CHECK_THROWS_AS(parse("t_max_exp=5\nt_min_exp=5\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("").require_seed(), ConfigError);
  CHECK_THROWS_AS(snls::load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("config echo round trips", "[config]") {
  snls::RunConfig c;
  c.K = 5;
  c.seed = 99;
  c.kappa = 0.25;
  c.initial = "rough-1.5";
  std::stringstream ss;
  for (const auto& line : c.echo()) ss << line << '\n';
  const auto back = snls::parse_config(ss);
  CHECK(back.echo() == c.echo());
}

TEST_CASE("snapshot round trip is exact", "[io]") {
  std::mt19937_64 rng(51);
  const auto f = oracle::random_field(snls::make_grid(6), rng);
  std::stringstream ss;
  snls::write_snapshot(ss, f);
  std::string first;
  std::getline(std::istringstream(ss.str()) >> std::ws, first);
  CHECK(first == "-6,6");
  const auto g = snls::read_snapshot(ss);
  REQUIRE(g.mode_cutoff() == 6);
  CHECK(oracle::l2_diff(f, g) == 0.0);
}

TEST_CASE("malformed snapshots", "[io]") {
  auto read = [](const char* text) {
    std::istringstream is(text);
    return snls::read_snapshot(is);
  };
  CHECK_THROWS_AS(read(""), IoError);
  CHECK_THROWS_AS(read("-1,1\n-1,0,0\n0,1,0\n"), IoError);
  CHECK_THROWS_AS(read("-1,1\n-1,0,0\n1,1,0\n0,0,0\n"), IoError);
  CHECK_THROWS_AS(read("-1,1\n-1,0,0\n0,x,0\n1,0,0\n"), IoError);
  CHECK_THROWS_AS(read("-1,2\n"), IoError);
  CHECK_NOTHROW(read("-1,1\n-1,0,0\n0,1,0\n1,0,0.5\n"));
  CHECK_THROWS_AS(snls::load_snapshot("/nonexistent/snap.csv"), IoError);
}

TEST_CASE("run record and error table layout", "[io]") {
  snls::RunRecord rec;
  rec.header = {"K=4", "seed=3"};
  rec.rows.push_back({0, 0.0, 1.0, 0.5, 2.0, 0, 0.0, 0});
  rec.rows.push_back({1, 0.01, 1.0, 0.5, 2.0, 7, 1e-13, 0});
  std::ostringstream os;
  snls::write_run_record(os, rec);
  std::istringstream in(os.str());
  std::string l;
  std::getline(in, l);
  CHECK(l == "# K=4");
  std::getline(in, l);
  std::getline(in, l);
  CHECK(l == "step,time,mass,energy_h0,sobolev_alpha,fp_iters,fp_residual,rejected");
  int rows = 0;
  while (std::getline(in, l)) ++rows;
  CHECK(rows == 2);

  snls::ErrorTable t;
  t.label = "demo";
  t.rows = {{0.1, 1e-3, 2e-3, 16, 0, false}, {0.05, 3e-4, 7e-4, 16, 0, false}};
  snls::fit_slope(t);
  std::ostringstream es;
  snls::write_error_table(es, t);
  CHECK(es.str().rfind("# demo\n# slope=", 0) == 0);
  CHECK(es.str().find("t,rms,max,samples,rejected,degenerate\n") != std::string::npos);
}
