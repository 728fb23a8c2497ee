#include "nlb/integrators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlb/operators.hpp"
#include "nlb/spectral.hpp"

namespace nlb {

std::string scheme_name(Scheme s) { return s == Scheme::euler ? "euler" : "rk4"; }

Scheme scheme_from_name(const std::string& name) {
  if (name == "euler") return Scheme::euler;
  if (name == "rk4") return Scheme::rk4;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected euler|rk4)");
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::aborted: return "aborted";
  }
  return "completed";
}

double cfl_timestep(const Field& u, const KernelSpec& spec, double safety,
                    double tau_max) {
  const double u_inf = max_abs(u);
  if (u_inf == 0.0) return tau_max;
  const auto& qk = quad_kernel_for(*u.grid, spec);
  const double tau = safety * u.grid->mesh / (u_inf * qk.weight_sum);
  return std::min(tau, tau_max);
}

namespace {

// Internal evolution state: nodal values of the form's own variable (u, w, or
// v) plus the running mean for the fluctuation form.
struct State {
  std::vector<double> y;
  double mu = 0.0;
};

struct FormOps {
  EquationForm form;
  KernelSpec spec;
  GridPtr grid;
  double time_scale;  // pi*c1 for the spectral-form paths, so both kernel
                      // modes evolve on the same clock as the quadrature

  State derivative(const State& s) const {
    State d;
    d.mu = 0.0;
    Field f = detail::wrap_field(grid, s.y);  // copies; cheap next to the FFTs
    switch (form) {
      case EquationForm::u_quadrature:
        d.y = rhs_u_quadrature(f, spec).values;
        break;
      case EquationForm::u_spectral: {
        d.y = rhs_u_spectral(f).values;
        if (time_scale != 1.0)
          for (double& v : d.y) v *= time_scale;
        break;
      }
      case EquationForm::w_symmetrized:
        d.y = rhs_w(f, spec).values;
        break;
      case EquationForm::v_fluctuation: {
        d.y = rhs_v_fluctuation(f, s.mu).values;
        d.mu = time_scale * mu_rate(f);
        if (time_scale != 1.0)
          for (double& v : d.y) v *= time_scale;
        break;
      }
      case EquationForm::frozen: {
        d.y = rhs_frozen(f).values;
        if (time_scale != 1.0)
          for (double& v : d.y) v *= time_scale;
        break;
      }
    }
    return d;
  }

  // |u|_inf of the u-space view, used by the CFL rule and the amplitude guard.
  double u_inf(const State& s) const {
    double m = 0.0;
    switch (form) {
      case EquationForm::w_symmetrized:
        for (double v : s.y) m = std::max(m, v);
        return m > 0.0 ? std::sqrt(m) : 0.0;
      case EquationForm::v_fluctuation:
        for (double v : s.y) m = std::max(m, std::fabs(s.mu + v));
        return m;
      default:
        for (double v : s.y) m = std::max(m, std::fabs(v));
        return m;
    }
  }

  Field u_view(const State& s) const {
    std::vector<double> u(s.y.size());
    switch (form) {
      case EquationForm::w_symmetrized:
        for (size_t i = 0; i < s.y.size(); ++i) u[i] = std::sqrt(s.y[i]);
        break;
      case EquationForm::v_fluctuation:
        for (size_t i = 0; i < s.y.size(); ++i) u[i] = s.mu + s.y[i];
        break;
      default:
        u = s.y;
    }
    return detail::wrap_field(grid, std::move(u));
  }

  State initial_state(const Field& u0) const {
    State s;
    switch (form) {
      case EquationForm::w_symmetrized: {
        s.y.resize(u0.values.size());
        for (size_t i = 0; i < s.y.size(); ++i) {
          if (u0.values[i] <= 0.0)
            throw std::domain_error("evolve: the w form requires u0 > 0");
          s.y[i] = u0.values[i] * u0.values[i];
        }
        break;
      }
      case EquationForm::v_fluctuation: {
        s.mu = mean_value(u0);
        s.y.resize(u0.values.size());
        for (size_t i = 0; i < s.y.size(); ++i) s.y[i] = u0.values[i] - s.mu;
        break;
      }
      default:
        s.y = u0.values;
    }
    return s;
  }
};

std::vector<double> axpy(const std::vector<double>& y, double a,
                         const std::vector<double>& k) {
  std::vector<double> out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

template <typename Rhs>
State advance(const State& s, double tau, Scheme scheme, const Rhs& f) {
  if (scheme == Scheme::euler) {
    const State k1 = f(s);
    return State{axpy(s.y, tau, k1.y), s.mu + tau * k1.mu};
  }
  const State k1 = f(s);
  const State s2{axpy(s.y, 0.5 * tau, k1.y), s.mu + 0.5 * tau * k1.mu};
  const State k2 = f(s2);
  const State s3{axpy(s.y, 0.5 * tau, k2.y), s.mu + 0.5 * tau * k2.mu};
  const State k3 = f(s3);
  const State s4{axpy(s.y, tau, k3.y), s.mu + tau * k3.mu};
  const State k4 = f(s4);
  State out;
  out.y.resize(s.y.size());
  const double w = tau / 6.0;
  for (size_t i = 0; i < s.y.size(); ++i)
    out.y[i] = s.y[i] + w * (k1.y[i] + 2.0 * k2.y[i] + 2.0 * k3.y[i] + k4.y[i]);
  out.mu = s.mu + w * (k1.mu + 2.0 * k2.mu + 2.0 * k3.mu + k4.mu);
  return out;
}

bool state_finite(const State& s) {
  if (!std::isfinite(s.mu)) return false;
  for (double v : s.y)
    if (!std::isfinite(v)) return false;
  return true;
}

bool state_positive(const State& s) {
  for (double v : s.y)
    if (v <= 0.0) return false;
  return true;
}

template <typename Rhs, typename UInf, typename UView>
Trajectory evolve_loop(const Field& u0, const StepControl& ctrl, RunMeta meta,
                       const KernelSpec& spec, const DiagnosticsConfig& diag,
                       const RecordCallback& on_record, State s, const Rhs& rhs,
                       const UInf& u_inf, const UView& u_view, bool needs_positive) {
  if (!all_finite(u0)) throw std::invalid_argument("evolve: non-finite initial data");
  if (ctrl.t_end <= 0.0) throw std::invalid_argument("evolve: t_end must be > 0");
  if (ctrl.safety <= 0.0 || ctrl.safety > 1.0)
    throw std::invalid_argument("evolve: safety must lie in (0, 1]");
  if (ctrl.record_every < 1)
    throw std::invalid_argument("evolve: record_every must be >= 1");

  const GridPtr grid = u0.grid;
  const auto& qk = quad_kernel_for(*grid, spec);
  const int tail_kmin = grid->n / 4;

  Trajectory traj;
  traj.meta = std::move(meta);
  traj.meta.n = grid->n;
  traj.meta.tau_min_used = std::numeric_limits<double>::infinity();
  traj.meta.tau_max_used = 0.0;

  const double amp0 = std::max(max_abs(u0), 1e-12);
  const double grad0 = std::max(max_abs(grad_spectral(u0)), 1e-12);
  const double amp_thr = ctrl.guards.amp_factor * amp0;
  const double grad_thr = ctrl.guards.grad_factor * grad0;

  double t = 0.0;
  const double t_eps = 1e-12 * std::max(1.0, ctrl.t_end);

  auto push_record = [&](const Field& u, double time) {
    const DiagnosticsRecord* prev = traj.records.empty() ? nullptr : &traj.records.back();
    const Field* prev_state = traj.states.empty() ? nullptr : &traj.states.back();
    DiagnosticsRecord rec = record(u, time, prev, diag, prev_state);
    traj.times.push_back(time);
    traj.states.push_back(u);
    traj.records.push_back(std::move(rec));
    if (on_record) on_record(time, traj.states.back(), traj.records.back());
  };

  push_record(u_view(s), 0.0);

  long long k = 0;
  bool done = false;
  while (!done) {
    if (t >= ctrl.t_end - t_eps) break;
    if (k >= ctrl.max_steps) {
      traj.status = RunStatus::aborted;
      traj.trip_reason = "max_steps";
      break;
    }

    double tau;
    if (ctrl.tau > 0.0) {
      tau = ctrl.tau;
    } else {
      const double ui = u_inf(s);
      tau = (ui == 0.0) ? ctrl.tau_max
                        : std::min(ctrl.safety * grid->mesh / (ui * qk.weight_sum),
                                   ctrl.tau_max);
    }
    tau = std::min(tau, ctrl.t_end - t);
    if (tau <= t_eps) break;

    State cand = advance(s, tau, ctrl.scheme, rhs);

    // Cheap guards run every step; the state that violates them is dropped
    // when non-finite (or no longer admissible), kept when merely large.
    if (!state_finite(cand)) {
      traj.status = RunStatus::blowup_detected;
      traj.trip_reason = "non_finite";
      traj.trip_time = t + tau;
      if (traj.times.empty() || traj.times.back() < t - t_eps) push_record(u_view(s), t);
      break;
    }
    if (needs_positive && !state_positive(cand)) {
      traj.status = RunStatus::blowup_detected;
      traj.trip_reason = "positivity_lost";
      traj.trip_time = t + tau;
      if (traj.times.empty() || traj.times.back() < t - t_eps) push_record(u_view(s), t);
      break;
    }

    s = std::move(cand);
    t += tau;
    ++k;
    traj.meta.tau_min_used = std::min(traj.meta.tau_min_used, tau);
    traj.meta.tau_max_used = std::max(traj.meta.tau_max_used, tau);

    bool tripped = false;
    std::string reason;
    if (u_inf(s) > amp_thr) {
      tripped = true;
      reason = "amplitude";
    }

    const bool due = tripped || (k % ctrl.record_every == 0) || t >= ctrl.t_end - t_eps;
    if (due) {
      Field u = u_view(s);
      push_record(u, t);
      const auto& rec = traj.records.back();
      if (!tripped && rec.grad_inf > grad_thr) {
        tripped = true;
        reason = "gradient";
      }
      if (!tripped && spectral_tail_ratio(u, tail_kmin) > ctrl.guards.tail_ratio) {
        tripped = true;
        reason = "spectral_tail";
      }
      if (tripped) {
        traj.status = RunStatus::blowup_detected;
        traj.trip_reason = reason;
        traj.trip_time = t;
        done = true;
      }
    }
  }

  traj.meta.steps_taken = k;
  if (traj.meta.tau_min_used > traj.meta.tau_max_used) traj.meta.tau_min_used = 0.0;
  return traj;
}

}  // namespace

Field step(const Field& u, double tau, EquationForm form, const KernelSpec& spec,
           Scheme scheme) {
  if (tau <= 0.0) throw std::invalid_argument("step: tau must be > 0");
  FormOps ops{form, spec, u.grid, spec.bridging()};
  State s = ops.initial_state(u);
  State out = advance(s, tau, scheme, [&](const State& st) { return ops.derivative(st); });
  return ops.u_view(out);
}

Trajectory evolve(const Field& u0, const StepControl& ctrl, EquationForm form,
                  const KernelSpec& spec, const DiagnosticsConfig& diag,
                  const RecordCallback& on_record) {
  FormOps ops{form, spec, u0.grid, spec.bridging()};
  RunMeta meta;
  meta.form = form;
  meta.scheme = ctrl.scheme;
  meta.spec = spec;
  meta.tau = ctrl.tau;
  meta.safety = ctrl.safety;
  meta.tau_max = ctrl.tau_max;
  meta.t_end = ctrl.t_end;
  meta.record_every = ctrl.record_every;
  meta.guards = ctrl.guards;
  return evolve_loop(
      u0, ctrl, std::move(meta), spec, diag, on_record, ops.initial_state(u0),
      [&](const State& st) { return ops.derivative(st); },
      [&](const State& st) { return ops.u_inf(st); },
      [&](const State& st) { return ops.u_view(st); },
      form == EquationForm::w_symmetrized);
}

Trajectory evolve_fem(const Field& u0, const StepControl& ctrl, const KernelSpec& spec,
                      const DiagnosticsConfig& diag, const RecordCallback& on_record) {
  const FemSystem sys = fem_assemble(u0.grid);
  RunMeta meta;
  meta.form = EquationForm::u_quadrature;
  meta.fem = true;
  meta.scheme = ctrl.scheme;
  meta.spec = spec;
  meta.tau = ctrl.tau;
  meta.safety = ctrl.safety;
  meta.tau_max = ctrl.tau_max;
  meta.t_end = ctrl.t_end;
  meta.record_every = ctrl.record_every;
  meta.guards = ctrl.guards;
  State s0;
  s0.y = u0.values;
  auto rhs = [&](const State& st) {
    State d;
    d.y = fem_rhs(sys, detail::wrap_field(u0.grid, st.y), spec).values;
    return d;
  };
  auto u_inf = [](const State& st) {
    double m = 0.0;
    for (double v : st.y) m = std::max(m, std::fabs(v));
    return m;
  };
  auto u_view = [&](const State& st) { return detail::wrap_field(u0.grid, st.y); };
  return evolve_loop(u0, ctrl, std::move(meta), spec, diag, on_record, std::move(s0),
                     rhs, u_inf, u_view, false);
}

}  // namespace nlb
