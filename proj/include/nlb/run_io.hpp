#pragma once

#include <optional>
#include <string>

#include "nlb/run_config.hpp"
#include "nlb/trajectory.hpp"

namespace nlb {

/// Executes a configured run and emits the requested files into cfg.out_dir:
///   trajectory.csv   header "t,x_0,...,x_{n-1}", one row per record
///   diagnostics.ndjson  one object per record, a final status object
///   spectra.csv      "t,k,abs_uhat" slices (at most 33, evenly strided)
/// Every file starts with a "# config: <json>" comment. Returns the
/// trajectory. Writes are flushed per record.
Trajectory run_scenario(const RunConfig& cfg);

/// A run directory loaded back from disk.
struct LoadedRun {
  RunConfig config;
  Trajectory trajectory;          ///< states + records rebuilt from files
  std::string status = "completed";
  double tau_used = 0.0;          ///< max tau reported in the status line
};

/// Loads trajectory.csv + diagnostics.ndjson from a run directory. Throws
/// std::runtime_error naming each missing file.
LoadedRun load_run(const std::string& dir);

}  // namespace nlb
