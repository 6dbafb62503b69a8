#include "mapsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mapsim/errors.hpp"
#include "mapsim/kernels.hpp"

namespace mapsim {

namespace {

// id -> position in the maps vector, -1 when absent
std::vector<int> id_table(const std::vector<MapState>& maps) {
    int max_id = 0;
    for (const auto& m : maps) max_id = std::max(max_id, m.id);
    std::vector<int> idx(max_id + 1, -1);
    for (std::size_t k = 0; k < maps.size(); ++k) idx[maps[k].id] = static_cast<int>(k);
    return idx;
}

const MapState& map_by_id(const std::vector<MapState>& maps, const std::vector<int>& idx,
                          int map_id) {
    if (map_id < 0 || map_id >= static_cast<int>(idx.size()) || idx[map_id] < 0)
        throw SimError("controller: MAP id not found");
    return maps[idx[map_id]];
}

int graph_index(const ProximityGraph& g, int map_id) {
    for (int k = 0; k < g.n; ++k) {
        if (g.map_ids[k] == map_id) return k;
    }
    throw SimError("controller: MAP is not in the proximity graph");
}

}  // namespace

Vec2 gradient_term(int map_id, const std::vector<MapState>& maps,
                   const ProximityGraph& graph, const std::vector<int>& loads,
                   const ScenarioConfig& cfg) {
    const std::vector<int> idx = id_table(maps);
    const MapState& self = map_by_id(maps, idx, map_id);
    if (!self.alive) throw SimError("gradient_term: MAP is not alive");
    const int gi = graph_index(graph, map_id);

    const SigmaNormParams sn{cfg.epsilon};
    const SigmoidParams sig = SigmoidParams::make(cfg.a, cfg.b);
    const double range_sigma = sigma_norm(cfg.r, sn);
    const double d_sigma = sigma_norm(cfg.d, sn);
    const double nmax_sigma = sigma_norm(static_cast<double>(cfg.N_max), sn);
    const double r2 = cfg.r * cfg.r;

    Vec2 sum{0, 0};
    for (int j = 0; j < graph.n; ++j) {
        if (j == gi) continue;
        const MapState& other = map_by_id(maps, idx, graph.map_ids[j]);
        Vec2 diff = other.position - self.position;
        if (norm2(diff) > r2) continue;
        double z = sigma_norm(diff, sn);
        double strength = psi(z, range_sigma, d_sigma, cfg.gamma, sig);
        int over = std::max(loads[graph.map_ids[j] - 1] - cfg.N_max, 0);
        if (over > 0) {
            double arg = nmax_sigma > 0.0
                             ? std::min(sigma_norm(static_cast<double>(over), sn) / nmax_sigma, 1.0)
                             : 1.0;
            strength += cfg.a * (1.0 - bump(arg, {0.0, 1.0}));
        }
        sum += strength * sigma_gradient(diff, sn);
    }
    return sum;
}

Vec2 consensus_term(int map_id, const std::vector<MapState>& maps,
                    const ProximityGraph& graph) {
    const std::vector<int> idx = id_table(maps);
    const MapState& self = map_by_id(maps, idx, map_id);
    if (!self.alive) throw SimError("consensus_term: MAP is not alive");
    const int gi = graph_index(graph, map_id);

    Vec2 sum{0, 0};
    for (int j = 0; j < graph.n; ++j) {
        if (j == gi) continue;
        double a = graph.at(gi, j);
        if (a <= 0.0) continue;
        const MapState& other = map_by_id(maps, idx, graph.map_ids[j]);
        sum += a * (other.velocity - self.velocity);
    }
    return sum;
}

Vec2 goal_term(int map_id, const std::vector<MapState>& maps,
               const ClusterSet& clusters, const ScenarioConfig& cfg) {
    const std::vector<int> idx = id_table(maps);
    const MapState& self = map_by_id(maps, idx, map_id);
    if (!self.alive) throw SimError("goal_term: MAP is not alive");
    Vec2 target = nearest_center(self.position, clusters);
    return cfg.c1 * (target - self.position) + cfg.c2 * (Vec2{0, 0} - self.velocity);
}

namespace {

ControlInput control_impl(const std::vector<MapState>& maps, const ProximityGraph& graph,
                          const std::vector<int>& loads, const ClusterSet& clusters,
                          const ScenarioConfig& cfg, bool parallel) {
    ControlInput out;
    const int n = static_cast<int>(maps.size());
    out.u.assign(n, Vec2{0, 0});
    std::string error;

#pragma omp parallel for schedule(static) if (parallel)
    for (int k = 0; k < n; ++k) {
        if (!maps[k].alive) continue;
        try {
            Vec2 u = gradient_term(maps[k].id, maps, graph, loads, cfg) +
                     consensus_term(maps[k].id, maps, graph) +
                     goal_term(maps[k].id, maps, clusters, cfg);
            if (!std::isfinite(u.x) || !std::isfinite(u.y))
                throw SimError("control input is not finite for MAP " +
                               std::to_string(maps[k].id));
            out.u[k] = u;
        } catch (const std::exception& e) {
#pragma omp critical
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw SimError(error);
    return out;
}

}  // namespace

ControlInput control_input(const std::vector<MapState>& maps, const ProximityGraph& graph,
                           const std::vector<int>& loads, const ClusterSet& clusters,
                           const ScenarioConfig& cfg) {
    return control_impl(maps, graph, loads, clusters, cfg, true);
}

ControlInput control_input_serial(const std::vector<MapState>& maps,
                                  const ProximityGraph& graph, const std::vector<int>& loads,
                                  const ClusterSet& clusters, const ScenarioConfig& cfg) {
    return control_impl(maps, graph, loads, clusters, cfg, false);
}

}  // namespace mapsim
