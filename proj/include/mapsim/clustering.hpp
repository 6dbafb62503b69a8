#pragma once

#include <vector>

#include "mapsim/rng.hpp"
#include "mapsim/vec2.hpp"

namespace mapsim {

struct ClusterSet {
    std::vector<Vec2> centers;
    std::vector<int> membership;  // per point, cluster index
};

// Lloyd iterations until center movement < tol or max_iters. Seeded from
// init_centers when given (warm start), otherwise k-means++-style from rng.
// Empty clusters are re-seeded at the point farthest from its current center.
// wcss_history, when non-null, receives the objective after every assignment.
ClusterSet lloyd(const std::vector<Vec2>& points, int K,
                 const std::vector<Vec2>* init_centers, Rng& rng,
                 int max_iters = 100, double tol = 1e-3,
                 std::vector<double>* wcss_history = nullptr);

int nearest_center_index(Vec2 pos, const ClusterSet& clusters);
Vec2 nearest_center(Vec2 pos, const ClusterSet& clusters);

}  // namespace mapsim
