#include "nlb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "nlb/diagnostics.hpp"
#include "nlb/presets.hpp"

namespace nlb {

using json = nlohmann::json;

namespace {

LawCheck check_energy(const Trajectory& traj, const RunConfig& cfg) {
  LawCheck c;
  c.law = "E";
  const double e0 = traj.records.front().energy;
  double drift = 0.0;
  for (const auto& rec : traj.records)
    drift = std::max(drift, std::fabs(rec.energy - e0));
  c.measured = (e0 > 0.0) ? drift / e0 : drift;
  c.threshold = (cfg.scheme == "rk4") ? 1e-6 : 5e-2;
  c.pass = c.measured <= c.threshold;
  c.note = "relative L2 drift over the run";
  if (traj.status != RunStatus::completed) {
    // Energy conservation is only meaningful while the solution is resolved.
    c.applicable = false;
    c.note = "run did not complete; energy drift reported, not judged";
    c.pass = true;
  }
  return c;
}

LawCheck check_momentum_law(const Trajectory& traj, const RunConfig& cfg) {
  LawCheck c;
  c.law = "ML";
  const double gain =
      traj.records.back().momentum - traj.records.front().momentum;
  if (traj.status != RunStatus::completed) {
    // The identity holds step-to-step, but the record-level trapezoid cannot
    // sample the dissipation spike next to a blow-up.
    c.applicable = false;
    c.measured = momentum_law_residual(traj);
    c.note = "run did not complete; residual reported, not judged";
    return c;
  }
  if (cfg.form == "frozen") {
    c.measured = std::fabs(gain);
    c.threshold = 1e-8 * std::max(1.0, std::fabs(traj.records.front().momentum));
    c.pass = c.measured <= c.threshold;
    c.note = "frozen form conserves momentum; |drift| judged instead";
    return c;
  }
  c.measured = momentum_law_residual(traj);
  c.threshold = std::max(1e-3 * std::fabs(gain), 1e-10);
  c.pass = c.measured <= c.threshold;
  c.note = "max per-interval residual vs 1e-3 of the total gain";
  return c;
}

LawCheck check_monotone_extrema(const Trajectory& traj, const RunConfig& cfg,
                                double tau_used, bool negative_side) {
  LawCheck c;
  c.law = negative_side ? "AMP" : "MP";
  const auto& first = traj.records.front();
  const bool positive_data = first.m > 0.0;
  const bool negative_data = first.M < 0.0;
  c.applicable = negative_side ? negative_data : positive_data;
  if (!c.applicable) {
    c.note = negative_side ? "data not negative" : "data not positive";
    return c;
  }
  const double scale = std::max({1.0, std::fabs(first.M), std::fabs(first.m)});
  const double tol = 10.0 * tau_used * tau_used * scale;
  double worst = 0.0;
  for (size_t k = 0; k + 1 < traj.records.size(); ++k) {
    const auto& a = traj.records[k];
    const auto& b = traj.records[k + 1];
    if (!negative_side) {
      worst = std::max(worst, b.M - a.M);  // max must not increase
      worst = std::max(worst, a.m - b.m);  // min must not decrease
    } else {
      worst = std::max(worst, a.M - b.M);  // mirrored for negative solutions
      worst = std::max(worst, b.m - a.m);
    }
  }
  c.measured = worst;
  c.threshold = tol;
  c.pass = worst <= tol;
  c.note = (cfg.scheme == "rk4") ? "10 tau^2 tolerance" : "10 tau^2 tolerance (euler)";
  return c;
}

LawCheck check_hp(const Trajectory& traj, const RunConfig& cfg) {
  LawCheck c;
  c.law = "HP";
  if (cfg.hp_ps.empty()) {
    c.applicable = false;
    c.note = "no hp exponents configured";
    return c;
  }
  if (traj.status != RunStatus::completed) {
    c.applicable = false;
    c.note = "run did not complete; balance residual not judged near blow-up";
    return c;
  }
  const double p = cfg.hp_ps.front();
  const auto& first = traj.records.front();
  const double base = std::pow(first.lp.count(p) ? first.lp.at(p) : 0.0, p);
  double worst = 0.0;
  bool monotone = true;
  for (size_t k = 0; k < traj.records.size(); ++k) {
    const auto& rec = traj.records[k];
    if (!rec.lp.count(p) || !rec.hp_acc.count(p)) continue;
    const double value = std::pow(rec.lp.at(p), p) + rec.hp_acc.at(p);
    worst = std::max(worst, std::fabs(value - base));
    if (first.m > 0.0 && k > 0) {
      const auto& prev = traj.records[k - 1];
      if (prev.lp.count(p) &&
          rec.lp.at(p) > prev.lp.at(p) + 1e-10 * std::max(1.0, base))
        monotone = false;
    }
  }
  c.measured = (base > 0.0) ? worst / base : worst;
  c.threshold = 5e-2;
  c.pass = c.measured <= c.threshold && monotone;
  c.note = monotone ? "balance residual relative to ||u0||_p^p"
                    : "L^p norm increased along a positive run";
  return c;
}

LawCheck check_decay(const Trajectory& traj) {
  LawCheck c;
  c.law = "decay_fit";
  if (traj.records.front().m <= 0.0 || traj.status != RunStatus::completed) {
    c.applicable = false;
    c.note = "decay law applies to completed positive-data runs";
    return c;
  }
  try {
    const DecayFit fit = fit_decay(traj);
    c.measured = fit.rate;
    c.threshold = 0.0;
    c.pass = fit.rate < 0.0 && fit.r_squared > 0.99;
    c.note = "rate " + std::to_string(fit.rate) + ", r2 " + std::to_string(fit.r_squared);
  } catch (const std::exception&) {
    // Amplitude already at numerical zero across the window: decay happened.
    c.pass = true;
    c.note = "amplitude at numerical zero over the fit window";
  }
  return c;
}

LawCheck check_bkm(const Trajectory& traj) {
  LawCheck c;
  c.law = "BKM";
  const double total = traj.records.back().bkm_acc;
  c.measured = total;
  if (traj.status == RunStatus::completed) {
    c.pass = std::isfinite(total);
    c.threshold = std::numeric_limits<double>::infinity();
    c.note = "accumulated |grad u|_inf integral stays finite";
  } else {
    // Report the growth concentration near the trip.
    const double t_end = traj.records.back().t;
    double acc_09 = 0.0;
    for (const auto& rec : traj.records)
      if (rec.t <= 0.9 * t_end) acc_09 = rec.bkm_acc;
    c.threshold = 0.0;
    c.measured = (acc_09 > 0.0) ? total / acc_09 : std::numeric_limits<double>::infinity();
    c.pass = true;
    c.note = "growth factor of the BKM integral over the last 10% of the run";
  }
  return c;
}

LawCheck check_avg_bounds(const Trajectory& traj) {
  LawCheck c;
  c.law = "avg_bounds";
  const auto& first = traj.records.front();
  if (!(first.m < 0.0 && first.M > 0.0)) {
    c.applicable = false;
    c.note = "bounds are the interesting check for unsigned data";
    return c;
  }
  const double lower = first.momentum / kTwoPi;
  const double upper = first.energy / std::sqrt(kTwoPi);
  const double tol = 1e-8 * std::max(1.0, std::fabs(upper));
  double worst = 0.0;
  for (const auto& rec : traj.records) {
    const double avg = rec.momentum / kTwoPi;
    worst = std::max({worst, lower - avg, avg - upper});
  }
  c.measured = worst;
  c.threshold = tol;
  c.pass = worst <= tol;
  c.note = "mean stays in [mean(u0), ||u0||_2 / sqrt(2 pi)]";
  return c;
}

}  // namespace

VerifyReport verify_run(const std::string& dir) {
  const LoadedRun run = load_run(dir);
  const Trajectory& traj = run.trajectory;
  if (traj.records.empty()) throw std::runtime_error(dir + ": run has no records");

  double tau_used = run.config.tau > 0.0 ? run.config.tau : run.tau_used;
  if (tau_used <= 0.0) tau_used = 1e-4;

  VerifyReport rep;
  rep.status = run.status;
  rep.checks.push_back(check_energy(traj, run.config));
  rep.checks.push_back(check_momentum_law(traj, run.config));
  rep.checks.push_back(check_monotone_extrema(traj, run.config, tau_used, false));
  rep.checks.push_back(check_monotone_extrema(traj, run.config, tau_used, true));
  rep.checks.push_back(check_hp(traj, run.config));
  rep.checks.push_back(check_decay(traj));
  rep.checks.push_back(check_bkm(traj));
  rep.checks.push_back(check_avg_bounds(traj));

  rep.overall_pass = true;
  for (const auto& c : rep.checks)
    if (c.applicable && !c.pass) rep.overall_pass = false;
  return rep;
}

std::string report_to_json(const VerifyReport& report) {
  json j;
  j["status"] = report.status;
  j["overall_pass"] = report.overall_pass;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json e;
    e["law"] = c.law;
    e["applicable"] = c.applicable;
    e["pass"] = c.pass;
    e["measured"] = c.measured;
    e["threshold"] = c.threshold;
    e["note"] = c.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j.dump(2);
}

}  // namespace nlb
