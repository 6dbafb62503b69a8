#pragma once

#include <vector>

#include "mapsim/clustering.hpp"
#include "mapsim/domain.hpp"
#include "mapsim/graph.hpp"

namespace mapsim {

struct ControlInput {
    std::vector<Vec2> u;  // indexed like the maps vector; zero for dead MAPs
};

// Pairwise spacing/load-sharing force on MAP map_id. Each in-range neighbor j
// contributes (psi(dist_sigma) + load_pull(j)) * unit-ish vector toward j, where
// load_pull is positive only when j holds more than N_max matched MSDs.
Vec2 gradient_term(int map_id, const std::vector<MapState>& maps,
                   const ProximityGraph& graph, const std::vector<int>& loads,
                   const ScenarioConfig& cfg);

// Velocity consensus with link-strength weights.
Vec2 consensus_term(int map_id, const std::vector<MapState>& maps,
                    const ProximityGraph& graph);

// Spring toward the nearest cluster center plus velocity damping toward rest.
Vec2 goal_term(int map_id, const std::vector<MapState>& maps,
               const ClusterSet& clusters, const ScenarioConfig& cfg);

ControlInput control_input(const std::vector<MapState>& maps, const ProximityGraph& graph,
                           const std::vector<int>& loads, const ClusterSet& clusters,
                           const ScenarioConfig& cfg);
ControlInput control_input_serial(const std::vector<MapState>& maps,
                                  const ProximityGraph& graph, const std::vector<int>& loads,
                                  const ClusterSet& clusters, const ScenarioConfig& cfg);

}  // namespace mapsim
