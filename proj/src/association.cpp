#include "mapsim/association.hpp"

#include <algorithm>
#include <cmath>

namespace mapsim {

namespace {
constexpr double kDistFloor = 1e-6;
}

double utility(Vec2 msd_pos, Vec2 map_pos, double kappa, double eta) {
    double dist = std::max(norm(msd_pos - map_pos), kDistFloor);
    return kappa * std::pow(dist, -eta);
}

namespace {

// Argmax of the utility equals argmin of floored distance for any kappa,eta > 0,
// so the hot loop ranks by squared distance and never calls pow.
void match_impl(const std::vector<MsdState>& msds, const std::vector<MapState>& maps,
                const ScenarioConfig& cfg, Assignment& out, bool parallel) {
    const int M = static_cast<int>(msds.size());
    const int L = static_cast<int>(maps.size());
    int max_id = L;
    for (const auto& m : maps) max_id = std::max(max_id, m.id);
    out.msd_to_map.assign(M, 0);
    out.loads.assign(max_id, 0);
    out.covered.assign(M, 0);
    out.matched = 0;
    out.covered_count = 0;

    std::vector<int> alive;
    alive.reserve(L);
    for (int j = 0; j < L; ++j) {
        if (maps[j].alive) alive.push_back(j);
    }
    if (alive.empty() || M == 0) return;

    const double r2 = cfg.r * cfg.r;
    const double floor2 = kDistFloor * kDistFloor;
    std::vector<double> key(M, 0.0);  // floored squared distance to the chosen MAP

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < M; ++i) {
        double best = 0.0;
        int best_j = 0;
        for (int j : alive) {
            double d2 = norm2(msds[i].position - maps[j].position);
            if (d2 >= r2) continue;
            d2 = std::max(d2, floor2);
            if (best_j == 0 || d2 < best || (d2 == best && maps[j].id < best_j)) {
                best = d2;
                best_j = maps[j].id;
            }
        }
        out.msd_to_map[i] = best_j;
        key[i] = best;
    }

    std::vector<std::vector<int>> members(max_id);
    for (int i = 0; i < M; ++i) {
        int mid = out.msd_to_map[i];
        if (mid == 0) continue;
        out.loads[mid - 1]++;
        out.matched++;
        members[mid - 1].push_back(i);
    }
    for (int j = 0; j < max_id; ++j) {
        auto& mem = members[j];
        if (static_cast<int>(mem.size()) > cfg.N_max) {
            // keep the N_max highest-utility matches; ties go to the lower MSD id
            std::stable_sort(mem.begin(), mem.end(),
                             [&](int a, int b) { return key[a] < key[b]; });
            mem.resize(cfg.N_max);
        }
        for (int i : mem) {
            out.covered[i] = 1;
            out.covered_count++;
        }
    }
}

}  // namespace

Assignment match(const std::vector<MsdState>& msds, const std::vector<MapState>& maps,
                 const ScenarioConfig& cfg) {
    Assignment out;
    match_impl(msds, maps, cfg, out, true);
    return out;
}

Assignment match_serial(const std::vector<MsdState>& msds,
                        const std::vector<MapState>& maps, const ScenarioConfig& cfg) {
    Assignment out;
    match_impl(msds, maps, cfg, out, false);
    return out;
}

void write_back(const Assignment& asg, std::vector<MsdState>& msds,
                std::vector<MapState>& maps) {
    for (std::size_t i = 0; i < msds.size(); ++i) {
        msds[i].assigned_map = asg.msd_to_map[i];
        msds[i].covered = asg.covered[i] != 0;
    }
    for (auto& m : maps) {
        m.load = m.alive ? asg.loads[m.id - 1] : 0;
    }
}

}  // namespace mapsim
