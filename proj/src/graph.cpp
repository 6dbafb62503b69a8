#include "mapsim/graph.hpp"

#include "mapsim/kernels.hpp"

namespace mapsim {

namespace {

void build_impl(const std::vector<MapState>& maps, const ScenarioConfig& cfg,
                ProximityGraph& g, bool parallel) {
    g.map_ids.clear();
    std::vector<Vec2> pos;
    for (const auto& m : maps) {
        if (m.alive) {
            g.map_ids.push_back(m.id);
            pos.push_back(m.position);
        }
    }
    g.n = static_cast<int>(g.map_ids.size());
    g.adjacency.assign(static_cast<std::size_t>(g.n) * g.n, 0.0);
    g.count_degree.assign(g.n, 0);
    g.weighted_degree.assign(g.n, 0.0);
    if (g.n == 0) return;

    const SigmaNormParams sn{cfg.epsilon};
    const double range_sigma = sigma_norm(cfg.r, sn);
    const int n = g.n;

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double z = sigma_norm(pos[j] - pos[i], sn);
            double a = bump(z / range_sigma, {cfg.gamma, 1.0});
            g.adjacency[static_cast<std::size_t>(i) * n + j] = a;
            g.adjacency[static_cast<std::size_t>(j) * n + i] = a;
        }
    }
    for (int i = 0; i < n; ++i) {
        double wd = 0.0;
        int cd = 0;
        for (int j = 0; j < n; ++j) {
            double a = g.at(i, j);
            wd += a;
            if (a > 0.0) cd++;
        }
        g.weighted_degree[i] = wd;
        g.count_degree[i] = cd;
    }
}

}  // namespace

ProximityGraph build_graph(const std::vector<MapState>& maps, const ScenarioConfig& cfg) {
    ProximityGraph g;
    build_impl(maps, cfg, g, true);
    return g;
}

ProximityGraph build_graph_serial(const std::vector<MapState>& maps,
                                  const ScenarioConfig& cfg) {
    ProximityGraph g;
    build_impl(maps, cfg, g, false);
    return g;
}

std::vector<double> laplacian(const ProximityGraph& g) {
    const int n = g.n;
    std::vector<double> lap(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            lap[static_cast<std::size_t>(i) * n + j] =
                (i == j) ? g.weighted_degree[i] : -g.at(i, j);
        }
    }
    return lap;
}

}  // namespace mapsim
