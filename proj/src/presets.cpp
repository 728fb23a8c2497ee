#include "nlb/presets.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlb/expr.hpp"

namespace nlb {

namespace {

double smooth_positive(double x) {
  return 2.0 + std::sin(x) + 0.3 * std::cos(5.0 * x);
}

// Single jump at 0; the jump node takes the right limit.
double step_ramp(double x) {
  if (x < 0.0) return 0.5;
  return 1.0 - x / kTwoPi;
}

// Rough positive data: a kink at x = -1 and at the seam, a jump at 0 followed
// by the chirp 0.5 sqrt(x) sin(1/x) (clamped to 0 at x = 0). The left branch
// is pinned so the periodic extension is continuous at +-pi.
double chirp_data(double x) {
  const double right_at_pi = 1.5 + 0.5 * std::sqrt(kPi) * std::sin(1.0 / kPi);
  const double c = right_at_pi + 0.4 * (kPi - 1.0);
  if (x < 0.0) return c - 0.4 * std::fabs(x + 1.0);
  if (x == 0.0) return 1.5;
  return 1.5 + 0.5 * std::sqrt(x) * std::sin(1.0 / x);
}

std::vector<ScenarioPreset> build_presets() {
  std::vector<ScenarioPreset> v;
  v.push_back({"figA_smooth", "smooth positive data; relaxes to its quadratic mean",
               smooth_positive, 256, 20.0});
  v.push_back({"figA_ramp", "positive step/ramp data with one jump; smooths instantly",
               step_ramp, 512, 6.0});
  v.push_back({"figA_chirp", "rough positive data: kinks, a jump, and a chirp",
               chirp_data, 512, 6.0});
  v.push_back({"figD_negative", "negative data; develops a singularity in finite time",
               [](double x) { return -smooth_positive(x); }, 256, 4.0});
  v.push_back({"figB_unsigned", "unsigned data with a small negative dip",
               [](double x) { return 1.0 + std::sin(x) + 0.1 * std::cos(20.0 * x); },
               256, 6.0});
  v.push_back({"figC1_unsigned", "unsigned data with transient local instabilities",
               [](double x) { return 0.5 + std::sin(x) + 0.1 * std::cos(7.0 * x); },
               512, 6.0});
  v.push_back({"figC2_unsigned", "strongly oscillatory unsigned data, small mean",
               [](double x) {
                 return 0.2 + 0.5 * std::sin(19.0 * x) + 0.5 * std::cos(20.0 * x);
               },
               512, 4.0});
  return v;
}

}  // namespace

const std::vector<ScenarioPreset>& all_presets() {
  static const std::vector<ScenarioPreset> presets = build_presets();
  return presets;
}

const ScenarioPreset& preset(const std::string& name) {
  for (const auto& p : all_presets())
    if (p.name == name) return p;
  std::ostringstream msg;
  msg << "unknown preset '" << name << "'; available:";
  for (const auto& p : all_presets()) msg << " " << p.name;
  throw std::invalid_argument(msg.str());
}

std::function<double(double)> resolve_scenario(const std::string& scenario) {
  for (const auto& p : all_presets())
    if (p.name == scenario) return p.u0;
  if (looks_like_expression(scenario)) return parse_initial_expression(scenario);
  std::ostringstream msg;
  msg << "unknown scenario '" << scenario << "'; available presets:";
  for (const auto& p : all_presets()) msg << " " << p.name;
  msg << " (or an inline expression such as 2+sin(x)+0.3*cos(5x))";
  throw std::invalid_argument(msg.str());
}

Field scenario_field(const std::string& scenario, const GridPtr& grid) {
  return sample_field(grid, resolve_scenario(scenario));
}

}  // namespace nlb
