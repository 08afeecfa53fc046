#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlc/cli/experiment.hpp"

namespace nlc {

/// A named experiment: problem, solver spec and convergence settings.
struct Preset {
  std::string name;
  std::string description;
  ProblemConfig problem;
  std::string solver;
  RunOptions options;
};

const std::vector<Preset>& presets();
/// Throws ConfigError naming the closest preset when `name` is unknown.
const Preset& find_preset(const std::string& name);

}  // namespace nlc
