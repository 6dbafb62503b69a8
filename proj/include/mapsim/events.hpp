#pragma once

#include <vector>

#include "mapsim/domain.hpp"
#include "mapsim/rng.hpp"

namespace mapsim {

// Per-step random walk: each MSD moves by s * xi with xi uniform on [-1,1]^2.
void step_mobility(std::vector<MsdState>& msds, double s, Rng& rng);

// Marks floor(fraction * alive) uniformly chosen alive MAPs dead. Dead MAPs
// keep their final position, drop their load, and never participate again.
void apply_failure(std::vector<MapState>& maps, const FailureEvent& event, Rng& rng);

}  // namespace mapsim
