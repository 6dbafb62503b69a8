#pragma once

#include <string>
#include <vector>

#include "mapsim/domain.hpp"
#include "mapsim/metrics.hpp"
#include "mapsim/rng.hpp"

namespace mapsim {

struct Placement {
    std::vector<Vec2> positions;
    std::string method;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

Circle min_enclosing_circle(std::vector<Vec2> points, Rng& rng);

// Multi-restart alternation of nearest-center assignment and per-cluster
// geometric-median (Weiszfeld) updates, minimizing total client distance.
// No connectivity constraint. objective_history, when non-null, receives the
// objective after every iteration of every restart (non-increasing per restart).
Placement p_median(const std::vector<Vec2>& msd_positions, int L, Rng& rng,
                   int restarts = 10, std::vector<double>* objective_history = nullptr);

// Hexagonal lattice of the given pitch clipped to the minimum enclosing circle
// of the MSDs; overflow sites dropped farthest-first, shortfall placed on the
// enclosing circle itself. r_cov is the per-site influence radius; the lattice
// construction is governed by pitch alone.
Placement circle_packing(const std::vector<Vec2>& msd_positions, int L, double r_cov,
                         double pitch, Rng& rng);

// Association + proximity graph + metrics on a frozen placement.
MetricsRecord score_placement(const Placement& placement, const std::vector<MsdState>& msds,
                              const ScenarioConfig& cfg);

}  // namespace mapsim
