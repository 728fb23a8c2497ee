#pragma once

#include <string>
#include <vector>

#include "nlb/integrators.hpp"

namespace nlb {

/// Full description of one run; serializes to flat key-value JSON and is
/// embedded in every output file header.
struct RunConfig {
  std::string scenario = "figA_smooth";
  int n = 256;
  std::string scheme = "rk4";          // "euler" | "rk4"
  double tau = 0.0;                    // 0 = auto
  double safety = 0.5;
  double tau_max = 1e-2;
  double t_end = 20.0;
  int record_every = 100;
  std::string form = "u_spectral";     // u_quadrature|u_spectral|w|v|frozen
  std::string kernel_mode = "spectral";  // "paper" | "spectral"
  double guard_amp_factor = 1e3;
  double guard_grad_factor = 1e4;
  double guard_tail_ratio = 0.1;
  std::string out_dir = "out";
  std::vector<std::string> emit = {"trajectory", "diagnostics", "spectra"};
  std::vector<double> lp_ps = {2.0, 4.0};
  std::vector<double> analytic_rhos = {0.0, 0.25};
  std::vector<double> hp_ps = {4.0};

  bool operator==(const RunConfig&) const = default;

  StepControl step_control() const;
  KernelSpec kernel_spec() const;
  EquationForm equation_form() const;
  DiagnosticsConfig diagnostics_config() const;
};

/// Single-line JSON with keys mirroring the field names.
std::string serialize_config(const RunConfig& cfg);

/// Parses the JSON produced by serialize_config (unknown keys rejected).
/// Throws std::invalid_argument with a position-annotated message.
RunConfig parse_config(const std::string& json_text);

/// Validates ranges (n even and >= 4, safety in (0,1], ...); throws listing
/// every violated field.
void validate_config(const RunConfig& cfg);

}  // namespace nlb
