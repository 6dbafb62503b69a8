#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapsim/rng.hpp"
#include "mapsim/vec2.hpp"

namespace mapsim {

struct MsdState {
    int id = 0;            // 1..M
    Vec2 position;
    int assigned_map = 0;  // 0 = unmatched, else MAP id
    bool covered = false;
};

struct MapState {
    int id = 0;  // 1..L
    Vec2 position;
    Vec2 velocity;
    bool alive = true;
    int load = 0;
};

struct GmmComponent {
    double weight = 1.0;
    Vec2 mean;
    std::array<double, 4> cov{0, 0, 0, 0};  // row-major 2x2
};

struct MapInit {
    Vec2 region_min;
    Vec2 region_max;
    Vec2 vel_min;
    Vec2 vel_max;
};

struct FailureEvent {
    double time = 0.0;
    double fraction = 0.0;
};

enum class Scheme { ExactHold, ForwardDifference };

struct ScenarioConfig {
    int M = 2000;
    int L = 80;
    int K = 3;
    double r = 24.0;
    double d = 20.0;
    int N_max = 80;
    double h = 20.0;  // elevation, cosmetic only
    double epsilon = 0.1;
    double gamma = 0.2;
    double a = 5.0;
    double b = 5.0;
    double c1 = 0.2;
    double c2 = 0.1;
    double kappa = 1.0;
    double eta = 4.0;
    double s = 0.2;
    double tau = 1.0;
    double Ts = 0.01;
    double t_end = 25.0;
    std::vector<GmmComponent> gmm;
    std::optional<MapInit> map_init;  // defaulted from the mixture when absent
    std::vector<FailureEvent> failure_events;
    Scheme scheme = Scheme::ExactHold;
    int snapshot_interval = 100;
    double recovery_window = 2.0;
    std::uint64_t seed = 1;

    MapInit resolved_map_init() const;
};

// Reference scenario: three-component mixture, no failures, seed 1.
ScenarioConfig default_config();

void validate(const ScenarioConfig& cfg);  // throws ConfigError

ScenarioConfig config_from_json_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string config_to_json_text(const ScenarioConfig& cfg);  // canonical form

struct SimulationState {
    double t = 0.0;
    long step_index = 0;
    std::vector<MsdState> msds;
    std::vector<MapState> maps;
    std::vector<Vec2> cluster_centers;
};

SimulationState sample_initial_state(const ScenarioConfig& cfg, Rng& rng);

}  // namespace mapsim
