#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mapsim/association.hpp"
#include "mapsim/clustering.hpp"
#include "mapsim/controller.hpp"
#include "mapsim/domain.hpp"
#include "mapsim/graph.hpp"
#include "mapsim/runner.hpp"

using namespace mapsim;

namespace {

double time_ms(const std::function<void()>& f, int iters) {
    f();  // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < iters; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / iters;
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-16s %10.3f ms %10.3f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
    ScenarioConfig cfg = default_config();
    Rng placement = derive_stream(cfg.seed, "placement");
    SimulationState st = sample_initial_state(cfg, placement);
    Rng clustering = derive_stream(cfg.seed, "clustering");

    std::vector<Vec2> pts;
    for (const auto& m : st.msds) pts.push_back(m.position);
    ClusterSet clusters = lloyd(pts, cfg.K, nullptr, clustering);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("scale: M=%d L=%d\n\n", cfg.M, cfg.L);
    std::printf("%-16s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    Assignment as = match_serial(st.msds, st.maps, cfg);
    Assignment ap = match(st.msds, st.maps, cfg);
    row("match",
        time_ms([&] { as = match_serial(st.msds, st.maps, cfg); }, 20),
        time_ms([&] { ap = match(st.msds, st.maps, cfg); }, 20),
        as.msd_to_map == ap.msd_to_map && as.loads == ap.loads);

    ProximityGraph gs = build_graph_serial(st.maps, cfg);
    ProximityGraph gp = build_graph(st.maps, cfg);
    row("build_graph",
        time_ms([&] { gs = build_graph_serial(st.maps, cfg); }, 200),
        time_ms([&] { gp = build_graph(st.maps, cfg); }, 200),
        gs.adjacency == gp.adjacency && gs.weighted_degree == gp.weighted_degree);

    ControlInput us = control_input_serial(st.maps, gp, ap.loads, clusters, cfg);
    ControlInput up = control_input(st.maps, gp, ap.loads, clusters, cfg);
    row("control_input",
        time_ms([&] { us = control_input_serial(st.maps, gp, ap.loads, clusters, cfg); }, 200),
        time_ms([&] { up = control_input(st.maps, gp, ap.loads, clusters, cfg); }, 200),
        us.u == up.u);

    ScenarioConfig short_cfg = cfg;
    short_cfg.t_end = 2.0;
    auto t0 = std::chrono::steady_clock::now();
    RunOutput out = run(short_cfg);
    auto t1 = std::chrono::steady_clock::now();
    double total = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::printf("\nfull run, %zu steps: %.1f ms (%.3f ms/step)\n", out.series.size() - 1, total,
                total / (out.series.size() - 1));
    return 0;
}
