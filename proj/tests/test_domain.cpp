#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mapsim/domain.hpp"
#include "mapsim/errors.hpp"
#include "mapsim/rng.hpp"

using namespace mapsim;

TEST_CASE("default config is valid and carries the reference scenario") {
    ScenarioConfig cfg = default_config();
    CHECK_NOTHROW(validate(cfg));
    CHECK(cfg.M == 2000);
    CHECK(cfg.L == 80);
    CHECK(cfg.K == 3);
    CHECK(cfg.r == 24.0);
    CHECK(cfg.d == 20.0);
    CHECK(cfg.N_max == 80);
    CHECK(cfg.epsilon == 0.1);
    CHECK(cfg.a == 5.0);
    CHECK(cfg.b == 5.0);
    CHECK(cfg.c1 == 0.2);
    CHECK(cfg.c2 == 0.1);
    CHECK(cfg.s == 0.2);
    CHECK(cfg.tau == 1.0);
    CHECK(cfg.Ts == 0.01);
    CHECK(cfg.t_end == 25.0);
    CHECK(cfg.gmm.size() == 3);
}

TEST_CASE("validate rejects bad scenarios") {
    auto broken = [](auto mutate) {
        ScenarioConfig cfg = default_config();
        mutate(cfg);
        return cfg;
    };
    CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.d = c.r; })), ConfigError);
    CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.d = -1; })), ConfigError);
    CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.gamma = 1.5; })), ConfigError);
    CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.Ts = 0; })), ConfigError);
    CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.epsilon = 0; })), ConfigError);
    CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.M = -1; })), ConfigError);
    CHECK_THROWS_AS(
        validate(broken([](ScenarioConfig& c) { c.failure_events = {{1.0, 1.0}}; })),
        ConfigError);
    CHECK_THROWS_AS(
        validate(broken([](ScenarioConfig& c) { c.gmm[0].cov = {200, 5, -5, 100}; })),
        ConfigError);
    CHECK_THROWS_AS(
        validate(broken([](ScenarioConfig& c) { c.gmm[0].cov = {1, 10, 10, 1}; })),
        ConfigError);
}

TEST_CASE("map init region defaults to the mean box inflated by two std devs") {
    ScenarioConfig cfg = default_config();
    MapInit mi = cfg.resolved_map_init();
    CHECK(mi.region_min.x == doctest::Approx(-64.49489742783178).epsilon(1e-14));
    CHECK(mi.region_min.y == doctest::Approx(-78.2842712474619).epsilon(1e-14));
    CHECK(mi.region_max.x == doctest::Approx(78.2842712474619).epsilon(1e-14));
    CHECK(mi.region_max.y == doctest::Approx(74.64101615137755).epsilon(1e-14));
    CHECK(mi.vel_min.x == -2.0);
    CHECK(mi.vel_max.x == -1.0);
    CHECK(mi.vel_min.y == -2.0);
    CHECK(mi.vel_max.y == -1.0);
}

TEST_CASE("degenerate single-component sampling") {
    ScenarioConfig cfg = default_config();
    cfg.M = 50;
    cfg.L = 4;
    cfg.gmm = {{1.0, {12.0, -7.0}, {0, 0, 0, 0}}};
    Rng rng(3);
    SimulationState st = sample_initial_state(cfg, rng);
    REQUIRE(st.msds.size() == 50);
    for (const auto& m : st.msds) {
        CHECK(m.position.x == 12.0);
        CHECK(m.position.y == -7.0);
        CHECK(m.assigned_map == 0);
        CHECK_FALSE(m.covered);
    }
    CHECK(st.cluster_centers.size() == static_cast<std::size_t>(cfg.K));
    CHECK(st.t == 0.0);
    CHECK(st.step_index == 0);
}

TEST_CASE("empty MSD list is allowed") {
    ScenarioConfig cfg = default_config();
    cfg.M = 0;
    cfg.L = 2;
    Rng rng(5);
    SimulationState st = sample_initial_state(cfg, rng);
    CHECK(st.msds.empty());
    CHECK(st.maps.size() == 2);
}

TEST_CASE("sample mean sits near the mixture mean") {
    ScenarioConfig cfg = default_config();
    Rng rng(11);
    SimulationState st = sample_initial_state(cfg, rng);
    REQUIRE(st.msds.size() == 2000);
    Vec2 mean{0, 0};
    for (const auto& m : st.msds) mean += m.position;
    mean = mean * (1.0 / 2000.0);
    CHECK(std::fabs(mean.x - 10.0 / 3.0) < 3.0);
    CHECK(std::fabs(mean.y - 10.0 / 3.0) < 3.0);
}

TEST_CASE("sampled MAP states respect the init boxes") {
    ScenarioConfig cfg = default_config();
    Rng rng(13);
    SimulationState st = sample_initial_state(cfg, rng);
    MapInit mi = cfg.resolved_map_init();
    REQUIRE(st.maps.size() == 80);
    int id = 1;
    for (const auto& m : st.maps) {
        CHECK(m.id == id++);
        CHECK(m.alive);
        CHECK(m.load == 0);
        CHECK(m.position.x >= mi.region_min.x);
        CHECK(m.position.x <= mi.region_max.x);
        CHECK(m.position.y >= mi.region_min.y);
        CHECK(m.position.y <= mi.region_max.y);
        CHECK(m.velocity.x >= -2.0);
        CHECK(m.velocity.x <= -1.0);
        CHECK(m.velocity.y >= -2.0);
        CHECK(m.velocity.y <= -1.0);
        CHECK(std::isfinite(m.position.x));
        CHECK(std::isfinite(m.position.y));
    }
    for (const auto& m : st.msds) {
        CHECK(std::isfinite(m.position.x));
        CHECK(std::isfinite(m.position.y));
    }
}

TEST_CASE("sampling is deterministic for a fixed seed") {
    ScenarioConfig cfg = default_config();
    Rng a(99), b(99);
    SimulationState s1 = sample_initial_state(cfg, a);
    SimulationState s2 = sample_initial_state(cfg, b);
    REQUIRE(s1.msds.size() == s2.msds.size());
    for (std::size_t i = 0; i < s1.msds.size(); ++i) {
        CHECK(s1.msds[i].position.x == s2.msds[i].position.x);
        CHECK(s1.msds[i].position.y == s2.msds[i].position.y);
    }
    for (std::size_t i = 0; i < s1.maps.size(); ++i) {
        CHECK(s1.maps[i].position.x == s2.maps[i].position.x);
        CHECK(s1.maps[i].velocity.x == s2.maps[i].velocity.x);
    }
}

TEST_CASE("named rng streams are independent and stable") {
    Rng a = derive_stream(1, "placement");
    Rng b = derive_stream(1, "placement");
    Rng c = derive_stream(1, "mobility");
    Rng d = derive_stream(2, "placement");
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());
    Rng a2 = derive_stream(1, "placement");
    CHECK(a2.next_u64() != c.next_u64());
    a2 = derive_stream(1, "placement");
    CHECK(a2.next_u64() != d.next_u64());
}

TEST_CASE("config text round-trips losslessly") {
    ScenarioConfig cfg = default_config();
    cfg.failure_events = {{10.0, 0.3}};
    cfg.seed = 17;
    std::string text = config_to_json_text(cfg);
    ScenarioConfig back = config_from_json_text(text);
    CHECK(config_to_json_text(back) == text);
    CHECK(back.seed == 17);
    CHECK(back.failure_events.size() == 1);
    CHECK(back.failure_events[0].fraction == 0.3);
}

TEST_CASE("config file loads and normalizes") {
    ScenarioConfig cfg = load_config("configs/reference.json");
    CHECK(cfg.M == 2000);
    CHECK(cfg.L == 80);
    std::string canon = config_to_json_text(cfg);
    ScenarioConfig back = config_from_json_text(canon);
    CHECK(config_to_json_text(back) == canon);
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(config_from_json_text("{"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text("[]"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"bogus": 1})"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"counts": {"Q": 1}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"counts": {"M": "many"}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"seed": 1.5})"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"gmm": [{"weight": 1.0}]})"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"time": {"Ts": -0.01}})"), ConfigError);
    CHECK_THROWS_AS(load_config("does_not_exist.json"), ConfigError);
}

TEST_CASE("explicit map_init overrides the derived region") {
    std::string text = R"({
        "map_init": {
            "region": {"min": [-5, -6], "max": [5, 6]},
            "velocity": {"min": [0, 0], "max": [0, 0]}
        }
    })";
    ScenarioConfig cfg = config_from_json_text(text);
    MapInit mi = cfg.resolved_map_init();
    CHECK(mi.region_min.x == -5.0);
    CHECK(mi.region_max.y == 6.0);
    Rng rng(1);
    SimulationState st = sample_initial_state(cfg, rng);
    for (const auto& m : st.maps) {
        CHECK(m.velocity.x == 0.0);
        CHECK(m.velocity.y == 0.0);
    }
}
