#pragma once

#include <vector>

#include "mapsim/domain.hpp"

namespace mapsim {

// Overlay graph on the alive MAPs: dense symmetric link-strength matrix plus
// count and weighted degrees. Dead MAPs are excluded entirely.
struct ProximityGraph {
    int n = 0;
    std::vector<int> map_ids;          // graph index -> MAP id
    std::vector<double> adjacency;     // n*n row-major
    std::vector<int> count_degree;     // neighbors with positive link strength
    std::vector<double> weighted_degree;

    double at(int i, int j) const { return adjacency[static_cast<std::size_t>(i) * n + j]; }
};

ProximityGraph build_graph(const std::vector<MapState>& maps, const ScenarioConfig& cfg);
ProximityGraph build_graph_serial(const std::vector<MapState>& maps,
                                  const ScenarioConfig& cfg);

// L = diag(weighted_degree) - adjacency, row-major n*n
std::vector<double> laplacian(const ProximityGraph& g);

}  // namespace mapsim
