#include "snls/config.hpp"

#include "snls/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace snls {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw ConfigError("config: bad value '" + v + "' for key '" + key + "'");
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"K", [](RunConfig& c, const std::string& k, const std::string& v) { c.K = parse_number<int>(k, v); }},
      {"dt", [](RunConfig& c, const std::string& k, const std::string& v) { c.dt = parse_number<double>(k, v); }},
      {"steps", [](RunConfig& c, const std::string& k, const std::string& v) { c.steps = parse_number<long>(k, v); }},
      {"lambda", [](RunConfig& c, const std::string& k, const std::string& v) { c.lambda = parse_number<double>(k, v); }},
      {"kappa", [](RunConfig& c, const std::string& k, const std::string& v) { c.kappa = parse_number<double>(k, v); }},
      {"alpha", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha = parse_number<double>(k, v); }},
      {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"tableau", [](RunConfig& c, const std::string&, const std::string& v) { c.tableau = v; }},
      {"kernel_d", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel_d = parse_number<int>(k, v); }},
      {"fp_tol", [](RunConfig& c, const std::string& k, const std::string& v) { c.fp.tol = parse_number<double>(k, v); }},
      {"fp_max_iter", [](RunConfig& c, const std::string& k, const std::string& v) { c.fp.max_iter = parse_number<int>(k, v); }},
      {"fp_divergence",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.fp.divergence_factor = parse_number<double>(k, v); }},
      {"guess",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "previous") c.guess = InitialGuess::Previous;
         else if (v == "propagated") c.guess = InitialGuess::Propagated;
         else throw ConfigError("config: bad value '" + v + "' for key '" + k + "' (previous|propagated)");
       }},
      {"noise",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         try {
           c.noise = parse_noise_symmetry(v);
         } catch (const std::invalid_argument&) {
           throw ConfigError("config: bad value '" + v + "' for key '" + k + "' (even|independent)");
         }
       }},
      {"initial", [](RunConfig& c, const std::string&, const std::string& v) { c.initial = v; }},
      {"snapshot_every",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.snapshot_every = parse_number<long>(k, v); }},
      {"output", [](RunConfig& c, const std::string&, const std::string& v) { c.output = v; }},
      {"samples", [](RunConfig& c, const std::string& k, const std::string& v) { c.samples = parse_number<int>(k, v); }},
      {"refinement", [](RunConfig& c, const std::string& k, const std::string& v) { c.refinement = parse_number<int>(k, v); }},
      {"t_max_exp", [](RunConfig& c, const std::string& k, const std::string& v) { c.t_max_exp = parse_number<int>(k, v); }},
      {"t_min_exp", [](RunConfig& c, const std::string& k, const std::string& v) { c.t_min_exp = parse_number<int>(k, v); }},
      {"mode_bound", [](RunConfig& c, const std::string& k, const std::string& v) { c.mode_bound = parse_number<int>(k, v); }},
      {"quads", [](RunConfig& c, const std::string& k, const std::string& v) { c.quads = parse_number<int>(k, v); }},
      {"fd_h", [](RunConfig& c, const std::string& k, const std::string& v) { c.fd_h = parse_number<double>(k, v); }},
  };
  return table;
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second(cfg, key, value);
}

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value: '" + s + "'");
    apply_config_entry(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in);
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw ConfigError("config: seed is mandatory");
  return *seed;
}

void RunConfig::validate() const {
  require_seed();
  if (K < 1) throw ConfigError("config: K must be >= 1");
  if (!(dt > 0.0)) throw ConfigError("config: dt must be > 0");
  if (steps < 0) throw ConfigError("config: steps must be >= 0");
  if (!std::isfinite(lambda) || !std::isfinite(kappa)) throw ConfigError("config: lambda, kappa must be finite");
  if (!(alpha > 1.0)) throw ConfigError("config: alpha must be > 1");
  if (kernel_d < 1 || kernel_d > 4) throw ConfigError("config: kernel_d must be in 1..4");
  if (!(fp.tol > 0.0) || fp.max_iter < 1 || !(fp.divergence_factor > 1.0))
    throw ConfigError("config: fixed-point settings out of range");
  if (snapshot_every < 0) throw ConfigError("config: snapshot_every must be >= 0");
  if (samples < 1 || refinement < 0 || refinement > 20) throw ConfigError("config: samples/refinement out of range");
  if (t_max_exp < 0 || t_min_exp <= t_max_exp || t_min_exp > 30) throw ConfigError("config: need 0 <= t_max_exp < t_min_exp <= 30");
  if (mode_bound < 1 || quads < 1) throw ConfigError("config: mode_bound and quads must be >= 1");
  if (!(fd_h > 0.0)) throw ConfigError("config: fd_h must be > 0");
  try {
    make_tableau();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Tableau RunConfig::make_tableau() const {
  Tableau t = tableau_by_name(tableau);
  t.kernel = KernelSpec::with_default_points(kernel_d);
  return t;
}

std::vector<std::string> RunConfig::echo() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& k, const std::string& v) { out.push_back(k + "=" + v); };
  add("K", std::to_string(K));
  add("dt", fmt(dt));
  add("steps", std::to_string(steps));
  add("lambda", fmt(lambda));
  add("kappa", fmt(kappa));
  add("alpha", fmt(alpha));
  add("seed", seed ? std::to_string(*seed) : "");
  add("tableau", tableau);
  add("kernel_d", std::to_string(kernel_d));
  add("fp_tol", fmt(fp.tol));
  add("fp_max_iter", std::to_string(fp.max_iter));
  add("fp_divergence", fmt(fp.divergence_factor));
  add("guess", guess == InitialGuess::Previous ? "previous" : "propagated");
  add("noise", to_string(noise));
  add("initial", initial);
  add("snapshot_every", std::to_string(snapshot_every));
  add("output", output);
  add("samples", std::to_string(samples));
  add("refinement", std::to_string(refinement));
  add("t_max_exp", std::to_string(t_max_exp));
  add("t_min_exp", std::to_string(t_min_exp));
  add("mode_bound", std::to_string(mode_bound));
  add("quads", std::to_string(quads));
  add("fd_h", fmt(fd_h));
  return out;
}

} // namespace snls
