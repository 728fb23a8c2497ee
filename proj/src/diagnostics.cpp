#include "nlb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlb/operators.hpp"
#include "nlb/spectral.hpp"
#include "nlb/trajectory.hpp"

namespace nlb {

double hp_flux(const Field& u, double p, const KernelSpec& spec) {
  if (p <= 2.0) throw std::invalid_argument("hp_flux: requires p > 2");
  const auto& qk = quad_kernel_for(*u.grid, spec);
  const int n = u.grid->n;
  const double delta = u.grid->mesh;
  const double* uv = u.values.data();
  const double* row = qk.row.data();
  const bool p4 = (p == 4.0);

  std::vector<double> up(n);  // |u|^{p-2}
  for (int i = 0; i < n; ++i)
    up[i] = p4 ? uv[i] * uv[i] : std::pow(std::fabs(uv[i]), p - 2.0);

  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d < n; ++d) {
      int j = i + d;
      if (j >= n) j -= n;
      const double term = row[d] * uv[i] * uv[j] * (up[j] - up[i]) * (uv[j] - uv[i]);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return delta * delta * sum;
}

DiagnosticsRecord record(const Field& u, double t, const DiagnosticsRecord* prev,
                         const DiagnosticsConfig& cfg, const Field* prev_state) {
  if (!all_finite(u)) throw std::invalid_argument("record: non-finite field");
  DiagnosticsRecord rec;
  rec.t = t;
  rec.energy = lp_norm(u, 2.0);
  rec.momentum = momentum(u);
  const auto ex = extrema(u);
  rec.m = ex.min;
  rec.M = ex.max;
  rec.A = ex.amplitude;
  rec.h_half_sq = h_half_seminorm_sq(u);
  rec.grad_inf = max_abs(grad_spectral(u));

  const double dt = prev ? t - prev->t : 0.0;
  rec.bkm_acc = prev ? prev->bkm_acc + 0.5 * (prev->grad_inf + rec.grad_inf) * dt : 0.0;

  for (double p : cfg.lp_ps) rec.lp[p] = lp_norm(u, p);
  for (double rho : cfg.analytic_rhos) rec.analytic[rho] = analytic_norm(u, rho);

  for (double p : cfg.hp_ps) {
    const double flux = hp_flux(u, p, cfg.spec);
    double acc = 0.0;
    if (prev) {
      const auto it = prev->hp_acc.find(p);
      const double prev_acc = (it != prev->hp_acc.end()) ? it->second : 0.0;
      // Trapezoid when the previous state is available, rectangle otherwise.
      const double prev_flux = prev_state ? hp_flux(*prev_state, p, cfg.spec) : flux;
      acc = prev_acc + 0.5 * p * 0.5 * (prev_flux + flux) * dt;
    }
    rec.hp_acc[p] = acc;
  }
  return rec;
}

double momentum_law_residual(const Trajectory& traj) {
  if (traj.records.size() < 2)
    throw std::invalid_argument("momentum_law_residual: need at least two records");
  const double bridge = traj.meta.spec.bridging();
  double worst = 0.0;
  for (size_t k = 0; k + 1 < traj.records.size(); ++k) {
    const auto& a = traj.records[k];
    const auto& b = traj.records[k + 1];
    const double gain = b.momentum - a.momentum;
    const double integral = 0.5 * (a.h_half_sq + b.h_half_sq) * (b.t - a.t);
    worst = std::max(worst, std::fabs(gain - bridge * integral));
  }
  return worst;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double r_squared = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = (sxx > 0.0) ? sxy / sxx : 0.0;
  if (syy > 0.0) {
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace

DecayFit fit_decay(const Trajectory& traj, double t_lo, double t_hi,
                   DecayQuantity quantity) {
  if (traj.records.empty()) throw std::invalid_argument("fit_decay: empty trajectory");
  const double t0 = traj.records.front().t;
  const double t1 = traj.records.back().t;
  if (t_lo < 0.0) t_lo = t0 + 0.5 * (t1 - t0);  // default: the last half
  if (t_hi < 0.0) t_hi = t1;

  std::vector<double> ts, logs;
  for (const auto& rec : traj.records) {
    if (rec.t < t_lo || rec.t > t_hi) continue;
    const double q = (quantity == DecayQuantity::amplitude) ? rec.A : rec.grad_inf;
    if (q < 1e-13) continue;  // numerical zero; log would fit round-off
    ts.push_back(rec.t);
    logs.push_back(std::log(q));
  }
  if (ts.size() < 3)
    throw std::domain_error("fit_decay: fewer than three usable records in the window");

  const LineFit lf = fit_line(ts, logs);
  DecayFit fit;
  fit.rate = lf.slope;
  fit.t_lo = ts.front();
  fit.t_hi = ts.back();
  fit.r_squared = lf.r_squared;
  fit.points_used = static_cast<int>(ts.size());
  return fit;
}

double hp_balance(const Trajectory& traj, double p) {
  if (p <= 2.0) throw std::invalid_argument("hp_balance: requires p > 2");
  if (traj.states.empty()) throw std::invalid_argument("hp_balance: empty trajectory");
  const KernelSpec& spec = traj.meta.spec;
  const double base = std::pow(lp_norm(traj.states.front(), p), p);
  double acc = 0.0;
  double prev_flux = hp_flux(traj.states.front(), p, spec);
  double worst = 0.0;
  for (size_t k = 1; k < traj.states.size(); ++k) {
    const double flux = hp_flux(traj.states[k], p, spec);
    acc += 0.5 * (prev_flux + flux) * (traj.times[k] - traj.times[k - 1]);
    prev_flux = flux;
    const double value = std::pow(lp_norm(traj.states[k], p), p) + 0.5 * p * acc;
    worst = std::max(worst, std::fabs(value - base));
  }
  return worst;
}

std::vector<SpectrumRow> spectrum_slices(const Trajectory& traj,
                                         const std::vector<double>& times) {
  if (traj.states.empty()) throw std::invalid_argument("spectrum_slices: empty trajectory");
  std::vector<size_t> picks;
  for (double t : times) {
    size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < traj.times.size(); ++k) {
      const double d = std::fabs(traj.times[k] - t);
      if (d < dist) {
        dist = d;
        best = k;
      }
    }
    picks.push_back(best);
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());

  std::vector<SpectrumRow> rows;
  for (size_t idx : picks) {
    const Spectrum s = dft(traj.states[idx]);
    const int n = s.n();
    for (int k = -n / 2; k < n / 2; ++k)
      rows.push_back({traj.times[idx], k, std::abs(s.at(k))});
  }
  return rows;
}

std::vector<RadiusSample> analyticity_radius(const Trajectory& traj) {
  std::vector<RadiusSample> out;
  for (size_t idx = 0; idx < traj.states.size(); ++idx) {
    const auto mags = mode_magnitudes(traj.states[idx]);
    // Fit over the resolved band k <= n/4; the upper quarter of the spectrum
    // carries truncation pile-up once a run approaches blow-up.
    const size_t kmax = std::max<size_t>(2, (mags.size() - 1) / 2);
    std::vector<double> ks, logs;
    for (size_t k = 1; k <= kmax; ++k) {
      if (mags[k] > 1e-13) {
        ks.push_back(static_cast<double>(k));
        logs.push_back(std::log(mags[k]));
      }
    }
    RadiusSample sample;
    sample.t = traj.times[idx];
    if (ks.size() < 2) {
      sample.finite = false;
      sample.rho_star = std::numeric_limits<double>::infinity();
    } else {
      sample.rho_star = -fit_line(ks, logs).slope;
    }
    out.push_back(sample);
  }
  return out;
}

}  // namespace nlb
