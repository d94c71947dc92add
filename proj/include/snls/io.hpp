#pragma once

#include "snls/experiments.hpp"
#include "snls/integrator.hpp"
#include "snls/torus.hpp"

#include <iosfwd>
#include <string>

namespace snls {

/// Snapshot format: header line `k_min,k_max` (values, e.g. `-8,8`), then one
/// `k,re,im` line per mode in ascending k, 17 significant digits.
void write_snapshot(std::ostream& os, const SpectralField& f);
/// Throws IoError on malformed input, non-contiguous or out-of-order modes.
SpectralField read_snapshot(std::istream& is);
void save_snapshot(const std::string& path, const SpectralField& f);
SpectralField load_snapshot(const std::string& path);

/// `# key=value` echo lines, then
/// `step,time,mass,energy_h0,sobolev_alpha,fp_iters,fp_residual,rejected`.
void write_run_record(std::ostream& os, const RunRecord& rec);
/// Writes the CSV and, if the record has snapshots, `<path>.snap<step>.csv`.
void save_run_record(const std::string& path, const RunRecord& rec);

/// `# label`, `# slope=...` lines, then `t,rms,max,samples,rejected,degenerate`.
void write_error_table(std::ostream& os, const ErrorTable& table);

} // namespace snls
