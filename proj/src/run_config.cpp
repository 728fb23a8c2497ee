#include "nlb/run_config.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nlb {

using json = nlohmann::json;

StepControl RunConfig::step_control() const {
  StepControl ctrl;
  ctrl.scheme = scheme_from_name(scheme);
  ctrl.tau = tau;
  ctrl.safety = safety;
  ctrl.tau_max = tau_max;
  ctrl.t_end = t_end;
  ctrl.record_every = record_every;
  ctrl.guards.amp_factor = guard_amp_factor;
  ctrl.guards.grad_factor = guard_grad_factor;
  ctrl.guards.tail_ratio = guard_tail_ratio;
  return ctrl;
}

KernelSpec RunConfig::kernel_spec() const { return KernelSpec::from_name(kernel_mode); }

EquationForm RunConfig::equation_form() const { return form_from_name(form); }

DiagnosticsConfig RunConfig::diagnostics_config() const {
  DiagnosticsConfig d;
  d.lp_ps = lp_ps;
  d.analytic_rhos = analytic_rhos;
  d.hp_ps = hp_ps;
  d.spec = kernel_spec();
  return d;
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["scenario"] = cfg.scenario;
  j["n"] = cfg.n;
  j["scheme"] = cfg.scheme;
  if (cfg.tau > 0.0)
    j["tau"] = cfg.tau;
  else
    j["tau"] = "auto";
  j["safety"] = cfg.safety;
  j["tau_max"] = cfg.tau_max;
  j["t_end"] = cfg.t_end;
  j["record_every"] = cfg.record_every;
  j["form"] = cfg.form;
  j["kernel_mode"] = cfg.kernel_mode;
  j["guard_amp_factor"] = cfg.guard_amp_factor;
  j["guard_grad_factor"] = cfg.guard_grad_factor;
  j["guard_tail_ratio"] = cfg.guard_tail_ratio;
  j["out_dir"] = cfg.out_dir;
  j["emit"] = cfg.emit;
  j["lp_ps"] = cfg.lp_ps;
  j["analytic_rhos"] = cfg.analytic_rhos;
  j["hp_ps"] = cfg.hp_ps;
  return j.dump();
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const std::set<std::string> known = {
      "scenario", "n", "scheme", "tau", "safety", "tau_max", "t_end",
      "record_every", "form", "kernel_mode", "guard_amp_factor",
      "guard_grad_factor", "guard_tail_ratio", "out_dir", "emit",
      "lp_ps", "analytic_rhos", "hp_ps"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "'");

  RunConfig cfg;
  auto get = [&](const char* key, auto& out) {
    if (j.contains(key)) out = j.at(key).get<std::decay_t<decltype(out)>>();
  };
  get("scenario", cfg.scenario);
  get("n", cfg.n);
  get("scheme", cfg.scheme);
  if (j.contains("tau")) {
    if (j["tau"].is_string()) {
      if (j["tau"].get<std::string>() != "auto")
        throw std::invalid_argument("config: tau must be a number or \"auto\"");
      cfg.tau = 0.0;
    } else {
      cfg.tau = j["tau"].get<double>();
    }
  }
  get("safety", cfg.safety);
  get("tau_max", cfg.tau_max);
  get("t_end", cfg.t_end);
  get("record_every", cfg.record_every);
  get("form", cfg.form);
  get("kernel_mode", cfg.kernel_mode);
  get("guard_amp_factor", cfg.guard_amp_factor);
  get("guard_grad_factor", cfg.guard_grad_factor);
  get("guard_tail_ratio", cfg.guard_tail_ratio);
  get("out_dir", cfg.out_dir);
  get("emit", cfg.emit);
  get("lp_ps", cfg.lp_ps);
  get("analytic_rhos", cfg.analytic_rhos);
  get("hp_ps", cfg.hp_ps);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  std::ostringstream bad;
  auto flag = [&](const std::string& msg) { bad << (bad.tellp() > 0 ? "; " : "") << msg; };

  if (cfg.n < 4 || cfg.n % 2 != 0) flag("n must be even and >= 4");
  try {
    scheme_from_name(cfg.scheme);
  } catch (const std::exception& e) {
    flag(e.what());
  }
  try {
    form_from_name(cfg.form);
  } catch (const std::exception& e) {
    flag(e.what());
  }
  try {
    KernelSpec::from_name(cfg.kernel_mode);
  } catch (const std::exception& e) {
    flag(e.what());
  }
  if (cfg.tau < 0.0) flag("tau must be >= 0 (0 = auto)");
  if (cfg.safety <= 0.0 || cfg.safety > 1.0) flag("safety must lie in (0, 1]");
  if (cfg.tau_max <= 0.0) flag("tau_max must be > 0");
  if (cfg.t_end <= 0.0) flag("t_end must be > 0");
  if (cfg.record_every < 1) flag("record_every must be >= 1");
  if (cfg.guard_amp_factor <= 1.0) flag("guard_amp_factor must be > 1");
  if (cfg.guard_grad_factor <= 1.0) flag("guard_grad_factor must be > 1");
  if (cfg.guard_tail_ratio <= 0.0 || cfg.guard_tail_ratio > 1.0)
    flag("guard_tail_ratio must lie in (0, 1]");
  for (const auto& e : cfg.emit)
    if (e != "trajectory" && e != "diagnostics" && e != "spectra")
      flag("emit entries must be trajectory|diagnostics|spectra (got '" + e + "')");
  for (double p : cfg.lp_ps)
    if (p < 1.0) flag("lp_ps entries must be >= 1");
  for (double r : cfg.analytic_rhos)
    if (r < 0.0) flag("analytic_rhos entries must be >= 0");
  for (double p : cfg.hp_ps)
    if (p <= 2.0) flag("hp_ps entries must be > 2");

  const std::string msg = bad.str();
  if (!msg.empty()) throw std::invalid_argument("invalid config: " + msg);
}

}  // namespace nlb
