#pragma once

#include <functional>

#include "nlb/trajectory.hpp"

namespace nlb {

/// Time-stepping control. tau = 0 selects auto (CFL) stepping.
struct StepControl {
  Scheme scheme = Scheme::rk4;
  double tau = 0.0;        ///< fixed step; 0 = recompute from the CFL rule
  double safety = 0.5;     ///< CFL safety factor in (0, 1]
  double tau_max = 1e-2;   ///< cap for auto stepping
  double t_end = 1.0;
  int record_every = 100;  ///< record cadence in steps
  GuardConfig guards;
  long long max_steps = 400'000'000;  ///< hard stop; exceeding it aborts the run
};

/// CFL step tau = safety * delta / (|u|_inf * W), where W is the cached total
/// quadrature weight of the grid. Returns tau_max for |u|_inf = 0.
double cfl_timestep(const Field& u, const KernelSpec& spec, double safety,
                    double tau_max = 1e-2);

/// One explicit step of the chosen form. The input is always the u-space
/// state; the w and v forms convert internally for the step and convert back.
Field step(const Field& u, double tau, EquationForm form, const KernelSpec& spec,
           Scheme scheme = Scheme::rk4);

/// Called after each record is appended (used by the CLI to stream output).
using RecordCallback =
    std::function<void(double t, const Field& state, const DiagnosticsRecord& rec)>;

/// Integrates u0 to t_end or until the blow-up guard trips. Deterministic:
/// identical configuration gives a bit-identical trajectory.
Trajectory evolve(const Field& u0, const StepControl& ctrl, EquationForm form,
                  const KernelSpec& spec, const DiagnosticsConfig& diag = {},
                  const RecordCallback& on_record = {});

/// Same loop driven by the finite-element right-hand side A^{-1} J(U,U).
Trajectory evolve_fem(const Field& u0, const StepControl& ctrl, const KernelSpec& spec,
                      const DiagnosticsConfig& diag = {},
                      const RecordCallback& on_record = {});

}  // namespace nlb
