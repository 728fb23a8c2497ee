#pragma once

#include <string>
#include <vector>

#include "nlb/diagnostics.hpp"
#include "nlb/dynamics.hpp"
#include "nlb/grid.hpp"
#include "nlb/kernels.hpp"

namespace nlb {

enum class Scheme { euler, rk4 };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

enum class RunStatus { completed, blowup_detected, aborted };

std::string status_name(RunStatus s);

/// Blow-up guard thresholds. amp/grad factors are relative to the initial
/// field; the tail ratio is absolute.
struct GuardConfig {
  double amp_factor = 1e3;    ///< trip when |u|_inf > amp_factor * |u_0|_inf
  double grad_factor = 1e4;   ///< trip when |grad u|_inf > grad_factor * initial
  double tail_ratio = 0.1;    ///< trip when sum_{|k|>n/4}|uhat| / sum|uhat| exceeds this
};

/// Snapshot of the configuration that produced a trajectory.
struct RunMeta {
  EquationForm form = EquationForm::u_spectral;
  Scheme scheme = Scheme::rk4;
  KernelSpec spec;
  int n = 0;
  double tau = 0.0;          ///< 0 = auto (CFL)
  double safety = 0.5;
  double tau_max = 1e-2;
  double t_end = 0.0;
  int record_every = 100;
  GuardConfig guards;
  bool fem = false;  ///< true for trajectories driven by the FEM system
  long long steps_taken = 0;
  double tau_min_used = 0.0;
  double tau_max_used = 0.0;
};

/// Ordered (time, state, diagnostics) triples plus termination info.
/// For the w form the stored states are u = sqrt(w); for the v form they are
/// u = mu + v, so diagnostics are comparable across forms.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<DiagnosticsRecord> records;
  RunStatus status = RunStatus::completed;
  RunMeta meta;
  std::string trip_reason;  ///< set when status == blowup_detected
  double trip_time = 0.0;
};

}  // namespace nlb
