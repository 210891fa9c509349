#pragma once

#include <string>
#include <vector>

#include "mellg/config.hpp"

namespace mellg {

struct PresetMember {
  std::string name;
  RunConfig config;
};

std::vector<std::string> preset_names();

/// Experiment families: applied_field, traction, nutation, theta_sweep,
/// constraint_sweep, cfl_robustness. Throws InvalidInput on an unknown
/// name.
std::vector<PresetMember> make_preset(const std::string& name);

/// Runs one config: time loop, CSV, optional VTK snapshots. Creates the
/// output directory if needed.
RunResult execute_config(const RunConfig& cfg);

/// Runs all members of a preset (optionally in parallel, capped by the
/// MELLG_THREADS environment variable) after applying `overrides`
/// ("section.key=value"). The first five steps of every member must pass
/// the energy-residual, constraint-identity and tangency checks.
void run_preset(const std::string& name, const std::string& out_dir,
                const std::vector<std::string>& overrides);

}  // namespace mellg
