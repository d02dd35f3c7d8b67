#pragma once

#include <string>
#include <vector>

#include "csflow/simulate.hpp"

namespace csflow {

// Loads the flat key = value configuration format. Unknown keys are
// rejected; '#' starts a comment. Throws ConfigInvalid.
SimConfig load_config_file(const std::string& path);
SimConfig parse_config_text(const std::string& text);

// One row per node per snapshot: n,t,j,rho,x,y,w. The w column is left
// empty for curve-only runs.
std::string snapshots_csv(const std::vector<SimState>& states, bool with_field);

// Config echo, solver outcome, Newton iteration statistics and wall-clock.
// When the config matches a built-in benchmark and the run stores every
// step, the error functionals against the exact solution are included.
std::string summary_json(const SimConfig& config, const Trajectory& traj,
                         double wall_seconds);

// True when the run evolves a nontrivial field worth writing out.
bool field_is_active(const SimConfig& config);

bool write_text_file(const std::string& path, const std::string& content);

} // namespace csflow
