#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlb/grid.hpp"

namespace nlb {

/// Named initial-data scenario with recommended run parameters.
struct ScenarioPreset {
  std::string name;
  std::string description;
  std::function<double(double)> u0;
  int recommended_n = 256;
  double recommended_t_end = 10.0;
};

const std::vector<ScenarioPreset>& all_presets();

/// Throws std::invalid_argument listing the available names when unknown.
const ScenarioPreset& preset(const std::string& name);

/// Resolves a scenario string: a preset name, or an inline initial-data
/// expression such as "2+sin(x)+0.3*cos(5x)".
std::function<double(double)> resolve_scenario(const std::string& scenario);

/// Initial data sampled on a grid (jump nodes take the right limit).
Field scenario_field(const std::string& scenario, const GridPtr& grid);

}  // namespace nlb
