// nlb: command-line driver for the non-local Burgers laboratory.
//
//   nlb run --scenario <preset|expr|config.json> [flags]   integrate and emit files
//   nlb verify --run <dir>                                  re-check every law
//   nlb presets                                             list named scenarios

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nlb/presets.hpp"
#include "nlb/run_config.hpp"
#include "nlb/run_io.hpp"
#include "nlb/verify.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_run(nlb::RunConfig cfg) {
  const nlb::Trajectory traj = nlb::run_scenario(cfg);
  std::cout << "status: " << nlb::status_name(traj.status);
  if (!traj.trip_reason.empty()) std::cout << " (" << traj.trip_reason << ")";
  std::cout << "\n";
  if (!traj.times.empty()) {
    const auto& last = traj.records.back();
    std::cout << "t_final: " << traj.times.back() << "  steps: " << traj.meta.steps_taken
              << "\nfinal mean: " << last.momentum / nlb::kTwoPi
              << "  amplitude: " << last.A << "  energy: " << last.energy << "\n";
  }
  std::cout << "outputs in " << cfg.out_dir << "\n";
  // Blow-up detection is a scientific result, not a failure.
  return traj.status == nlb::RunStatus::aborted ? 1 : 0;
}

int cmd_verify(const std::string& dir) {
  const nlb::VerifyReport report = nlb::verify_run(dir);
  std::cout << nlb::report_to_json(report) << "\n";
  return report.overall_pass ? 0 : 1;
}

int cmd_presets() {
  for (const auto& p : nlb::all_presets())
    std::cout << p.name << "\t(n=" << p.recommended_n << ", t_end=" << p.recommended_t_end
              << ")\t" << p.description << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-local Burgers laboratory"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "integrate a scenario and emit output files");
  std::string scenario = "figA_smooth";
  int n = 0;
  double t_end = 0.0;
  std::string scheme, form, kernel_mode, tau_str, out_dir, emit_str;
  double safety = -1.0;
  int record_every = 0;
  double guard_amp = 0.0, guard_grad = 0.0, guard_tail = 0.0;
  run->add_option("--scenario", scenario,
                  "preset name, inline expression, or config JSON file");
  run->add_option("--n", n, "grid size (even, >= 4)");
  run->add_option("--t-end", t_end, "integration horizon");
  run->add_option("--scheme", scheme, "euler|rk4");
  run->add_option("--form", form, "u_quadrature|u_spectral|w|v|frozen");
  run->add_option("--kernel-mode", kernel_mode, "paper|spectral");
  run->add_option("--tau", tau_str, "time step, or 'auto' for CFL stepping");
  run->add_option("--safety", safety, "CFL safety factor in (0,1]");
  run->add_option("--record-every", record_every, "record cadence in steps");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--emit", emit_str, "comma list of trajectory,diagnostics,spectra");
  run->add_option("--guard-amp", guard_amp, "amplitude guard factor");
  run->add_option("--guard-grad", guard_grad, "gradient guard factor");
  run->add_option("--guard-tail", guard_tail, "spectral tail ratio guard");

  auto* verify = app.add_subcommand("verify", "re-check conservation laws of a run");
  std::string run_dir;
  verify->add_option("--run", run_dir, "run output directory")->required();

  auto* presets = app.add_subcommand("presets", "list scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) return cmd_presets();
    if (verify->parsed()) return cmd_verify(run_dir);

    nlb::RunConfig cfg;
    bool from_file = false;
    if (fs::exists(scenario) && fs::is_regular_file(scenario)) {
      std::ifstream in(scenario);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = nlb::parse_config(ss.str());
      from_file = true;
    } else {
      cfg.scenario = scenario;
    }
    // Preset recommendations seed n/t_end when neither a file nor a flag sets them.
    if (!from_file) {
      for (const auto& p : nlb::all_presets()) {
        if (p.name == cfg.scenario) {
          cfg.n = p.recommended_n;
          cfg.t_end = p.recommended_t_end;
        }
      }
    }
    if (n > 0) cfg.n = n;
    if (t_end > 0.0) cfg.t_end = t_end;
    if (!scheme.empty()) cfg.scheme = scheme;
    if (!form.empty()) cfg.form = form;
    if (!kernel_mode.empty()) cfg.kernel_mode = kernel_mode;
    if (!tau_str.empty()) cfg.tau = (tau_str == "auto") ? 0.0 : std::stod(tau_str);
    if (safety > 0.0) cfg.safety = safety;
    if (record_every > 0) cfg.record_every = record_every;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (guard_amp > 0.0) cfg.guard_amp_factor = guard_amp;
    if (guard_grad > 0.0) cfg.guard_grad_factor = guard_grad;
    if (guard_tail > 0.0) cfg.guard_tail_ratio = guard_tail;
    if (!emit_str.empty()) {
      cfg.emit.clear();
      std::stringstream ss(emit_str);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.emit.push_back(item);
    }
    return cmd_run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
