#pragma once

#include <string>

#include "mapsim/domain.hpp"
#include "mapsim/runner.hpp"

namespace mapsim {

// Draws one state: coverage disks and inter-MAP links under the agents,
// MSDs colored by coverage, dead MAPs as crosses, cluster centers as diamonds.
std::string render_svg(const SimulationState& st, const ScenarioConfig& cfg);

// Renders the stored snapshot closest in time to t (earlier one on ties).
std::string render_at(const RunOutput& out, double t);

}  // namespace mapsim
