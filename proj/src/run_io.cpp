#include "nlb/run_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nlb/diagnostics.hpp"
#include "nlb/integrators.hpp"
#include "nlb/presets.hpp"
#include "nlb/spectral.hpp"

namespace nlb {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Map keys in NDJSON objects ("2", "4", "0.25", ...).
std::string fmt_key(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

json record_to_json(const DiagnosticsRecord& rec) {
  json j;
  j["t"] = rec.t;
  j["energy"] = rec.energy;
  j["momentum"] = rec.momentum;
  j["m"] = rec.m;
  j["M"] = rec.M;
  j["A"] = rec.A;
  j["h_half_sq"] = rec.h_half_sq;
  j["grad_inf"] = rec.grad_inf;
  j["bkm_acc"] = rec.bkm_acc;
  json lp = json::object(), an = json::object(), hp = json::object();
  for (const auto& [p, v] : rec.lp) lp[fmt_key(p)] = v;
  for (const auto& [r, v] : rec.analytic) an[fmt_key(r)] = v;
  for (const auto& [p, v] : rec.hp_acc) hp[fmt_key(p)] = v;
  j["lp"] = lp;
  j["analytic"] = an;
  j["hp_acc"] = hp;
  return j;
}

DiagnosticsRecord record_from_json(const json& j) {
  DiagnosticsRecord rec;
  rec.t = j.at("t").get<double>();
  rec.energy = j.at("energy").get<double>();
  rec.momentum = j.at("momentum").get<double>();
  rec.m = j.at("m").get<double>();
  rec.M = j.at("M").get<double>();
  rec.A = j.at("A").get<double>();
  rec.h_half_sq = j.at("h_half_sq").get<double>();
  rec.grad_inf = j.at("grad_inf").get<double>();
  rec.bkm_acc = j.at("bkm_acc").get<double>();
  for (const auto& [k, v] : j.at("lp").items()) rec.lp[std::stod(k)] = v.get<double>();
  for (const auto& [k, v] : j.at("analytic").items())
    rec.analytic[std::stod(k)] = v.get<double>();
  for (const auto& [k, v] : j.at("hp_acc").items())
    rec.hp_acc[std::stod(k)] = v.get<double>();
  return rec;
}

}  // namespace

Trajectory run_scenario(const RunConfig& cfg) {
  validate_config(cfg);
  const GridPtr grid = make_grid(cfg.n);
  const Field u0 = scenario_field(cfg.scenario, grid);
  const KernelSpec spec = cfg.kernel_spec();
  const std::string header = "# config: " + serialize_config(cfg) + "\n";

  fs::create_directories(cfg.out_dir);
  const bool want_traj = std::count(cfg.emit.begin(), cfg.emit.end(), "trajectory") > 0;
  const bool want_diag = std::count(cfg.emit.begin(), cfg.emit.end(), "diagnostics") > 0;
  const bool want_spec = std::count(cfg.emit.begin(), cfg.emit.end(), "spectra") > 0;

  std::ofstream traj_out, diag_out;
  if (want_traj) {
    traj_out.open(fs::path(cfg.out_dir) / "trajectory.csv");
    traj_out << header << "t";
    for (int i = 0; i < cfg.n; ++i) traj_out << ",x_" << i;
    traj_out << "\n" << std::flush;
  }
  if (want_diag) {
    diag_out.open(fs::path(cfg.out_dir) / "diagnostics.ndjson");
    diag_out << header << std::flush;
  }

  RecordCallback writer = [&](double t, const Field& state, const DiagnosticsRecord& rec) {
    if (want_traj) {
      traj_out << fmt(t);
      for (double v : state.values) traj_out << ',' << fmt(v);
      traj_out << "\n" << std::flush;
    }
    if (want_diag) diag_out << record_to_json(rec).dump() << "\n" << std::flush;
  };

  Trajectory traj = evolve(u0, cfg.step_control(), cfg.equation_form(), spec,
                           cfg.diagnostics_config(), writer);

  if (want_diag) {
    json status;
    status["status"] = status_name(traj.status);
    status["t_final"] = traj.times.empty() ? 0.0 : traj.times.back();
    status["steps"] = traj.meta.steps_taken;
    status["tau_min"] = traj.meta.tau_min_used;
    status["tau_max"] = traj.meta.tau_max_used;
    if (!traj.trip_reason.empty()) status["trip_reason"] = traj.trip_reason;
    diag_out << status.dump() << "\n" << std::flush;
  }

  if (want_spec && !traj.states.empty()) {
    std::ofstream spec_out(fs::path(cfg.out_dir) / "spectra.csv");
    spec_out << header << "t,k,abs_uhat\n";
    // At most 33 slices, evenly strided over the records, first and last kept.
    const size_t nrec = traj.times.size();
    const size_t stride = std::max<size_t>(1, (nrec + 31) / 32);
    std::vector<double> slice_times;
    for (size_t k = 0; k < nrec; k += stride) slice_times.push_back(traj.times[k]);
    if (slice_times.back() != traj.times.back()) slice_times.push_back(traj.times.back());
    for (const auto& row : spectrum_slices(traj, slice_times))
      spec_out << fmt(row.t) << ',' << row.k << ',' << fmt(row.abs_uhat) << "\n";
  }

  return traj;
}

LoadedRun load_run(const std::string& dir) {
  const fs::path traj_path = fs::path(dir) / "trajectory.csv";
  const fs::path diag_path = fs::path(dir) / "diagnostics.ndjson";
  std::string missing;
  if (!fs::exists(traj_path)) missing += " " + traj_path.string();
  if (!fs::exists(diag_path)) missing += " " + diag_path.string();
  if (!missing.empty()) throw std::runtime_error("missing run files:" + missing);

  LoadedRun run;

  std::ifstream traj_in(traj_path);
  std::string line;
  if (!std::getline(traj_in, line) || line.rfind("# config: ", 0) != 0)
    throw std::runtime_error(traj_path.string() + ": missing '# config:' header");
  run.config = parse_config(line.substr(10));
  const GridPtr grid = make_grid(run.config.n);

  std::getline(traj_in, line);  // column header
  while (std::getline(traj_in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    run.trajectory.times.push_back(std::stod(cell));
    std::vector<double> vals;
    vals.reserve(run.config.n);
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) != run.config.n)
      throw std::runtime_error(traj_path.string() + ": row width != n");
    run.trajectory.states.push_back(detail::wrap_field(grid, std::move(vals)));
  }

  std::ifstream diag_in(diag_path);
  while (std::getline(diag_in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const json j = json::parse(line);
    if (j.contains("status")) {
      run.status = j.at("status").get<std::string>();
      run.tau_used = j.value("tau_max", 0.0);
      if (j.contains("trip_reason"))
        run.trajectory.trip_reason = j.at("trip_reason").get<std::string>();
    } else {
      run.trajectory.records.push_back(record_from_json(j));
    }
  }

  run.trajectory.meta.form = run.config.equation_form();
  run.trajectory.meta.scheme = scheme_from_name(run.config.scheme);
  run.trajectory.meta.spec = run.config.kernel_spec();
  run.trajectory.meta.n = run.config.n;
  run.trajectory.meta.tau = run.config.tau;
  run.trajectory.meta.t_end = run.config.t_end;
  run.trajectory.status = run.status == "completed"     ? RunStatus::completed
                          : run.status == "aborted"     ? RunStatus::aborted
                                                        : RunStatus::blowup_detected;
  if (run.trajectory.records.size() != run.trajectory.states.size())
    throw std::runtime_error(dir + ": record/state count mismatch between files");
  return run;
}

}  // namespace nlb
