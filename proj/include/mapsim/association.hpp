#pragma once

#include <vector>

#include "mapsim/domain.hpp"

namespace mapsim {

struct Assignment {
    std::vector<int> msd_to_map;   // per MSD, 0 = unmatched, else MAP id
    std::vector<int> loads;        // per MAP (id-1 indexed), matched counts
    std::vector<char> covered;     // per MSD
    int matched = 0;
    int covered_count = 0;
};

double utility(Vec2 msd_pos, Vec2 map_pos, double kappa = 1.0, double eta = 4.0);

// Each MSD goes to the alive MAP of highest utility within range r; loads may
// exceed N_max (the surplus drives the load-sharing force) but only the N_max
// best-utility matches per MAP count as covered.
Assignment match(const std::vector<MsdState>& msds, const std::vector<MapState>& maps,
                 const ScenarioConfig& cfg);
Assignment match_serial(const std::vector<MsdState>& msds,
                        const std::vector<MapState>& maps, const ScenarioConfig& cfg);

void write_back(const Assignment& asg, std::vector<MsdState>& msds,
                std::vector<MapState>& maps);

}  // namespace mapsim
