#include "snls/io.hpp"

#include "snls/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace snls {
namespace {

bool parse_ints(const std::string& line, int& a, int& b) {
  std::istringstream ss(line);
  char c = 0;
  return static_cast<bool>(ss >> a >> c >> b) && c == ',' && (ss >> std::ws).eof();
}

} // namespace

void write_snapshot(std::ostream& os, const SpectralField& f) {
  const int K = f.mode_cutoff();
  os << std::setprecision(17);
  os << -K << ',' << K << '\n';
  for (int k = -K; k <= K; ++k) os << k << ',' << f[k].real() << ',' << f[k].imag() << '\n';
}

SpectralField read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("snapshot: empty input");
  int kmin = 0, kmax = 0;
  if (!parse_ints(line, kmin, kmax)) throw IoError("snapshot: malformed header '" + line + "'");
  if (kmin != -kmax || kmax < 1) throw IoError("snapshot: mode range must be symmetric -K..K with K >= 1");
  const TorusGrid grid = make_grid(kmax);
  std::vector<Complex> c;
  int expect = kmin;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    int k = 0;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(ss >> k >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
      throw IoError("snapshot: malformed line " + std::to_string(lineno));
    if (k != expect) throw IoError("snapshot: expected mode " + std::to_string(expect) + " at line " + std::to_string(lineno));
    c.emplace_back(re, im);
    ++expect;
  }
  if (expect != kmax + 1) throw IoError("snapshot: missing modes");
  try {
    return SpectralField(grid, std::move(c));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("snapshot: ") + e.what());
  }
}

void save_snapshot(const std::string& path, const SpectralField& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_snapshot(out, f);
}

SpectralField load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return read_snapshot(in);
}

void write_run_record(std::ostream& os, const RunRecord& rec) {
  for (const auto& h : rec.header) os << "# " << h << '\n';
  os << "step,time,mass,energy_h0,sobolev_alpha,fp_iters,fp_residual,rejected\n";
  os << std::setprecision(17);
  for (const auto& r : rec.rows)
    os << r.step << ',' << r.time << ',' << r.mass << ',' << r.energy_h0 << ',' << r.sobolev_alpha << ','
       << r.fp_iters << ',' << r.fp_residual << ',' << r.rejected << '\n';
}

void save_run_record(const std::string& path, const RunRecord& rec) {
  {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    write_run_record(out, rec);
  }
  for (const auto& [step, field] : rec.snapshots) save_snapshot(path + ".snap" + std::to_string(step) + ".csv", field);
}

void write_error_table(std::ostream& os, const ErrorTable& t) {
  os << std::setprecision(17);
  os << "# " << t.label << '\n';
  os << "# slope=" << t.slope << " residual=" << t.slope_residual << " fitted_rows=" << t.fitted_rows
     << " full_slope=" << t.full_slope << " degenerate=" << (t.degenerate ? 1 : 0) << '\n';
  os << "t,rms,max,samples,rejected,degenerate\n";
  for (const auto& r : t.rows)
    os << r.t << ',' << r.rms << ',' << r.max << ',' << r.samples << ',' << r.rejected << ',' << (r.degenerate ? 1 : 0)
       << '\n';
}

} // namespace snls
