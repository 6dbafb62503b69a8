#include "mapsim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mapsim/errors.hpp"

namespace mapsim {

using Json = nlohmann::ordered_json;

ScenarioConfig default_config() {
    ScenarioConfig cfg;
    double w = 1.0 / 3.0;
    cfg.gmm = {
        {w, {50.0, 20.0}, {200.0, 0.0, 0.0, 100.0}},
        {w, {0.0, -50.0}, {500.0, 0.0, 0.0, 200.0}},
        {w, {-40.0, 40.0}, {150.0, 0.0, 0.0, 300.0}},
    };
    return cfg;
}

MapInit ScenarioConfig::resolved_map_init() const {
    if (map_init) return *map_init;
    MapInit mi;
    mi.vel_min = {-2.0, -2.0};
    mi.vel_max = {-1.0, -1.0};
    if (gmm.empty()) {
        mi.region_min = {0.0, 0.0};
        mi.region_max = {0.0, 0.0};
        return mi;
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& g : gmm) {
        double sx = 2.0 * std::sqrt(std::max(g.cov[0], 0.0));
        double sy = 2.0 * std::sqrt(std::max(g.cov[3], 0.0));
        xmin = std::min(xmin, g.mean.x - sx);
        xmax = std::max(xmax, g.mean.x + sx);
        ymin = std::min(ymin, g.mean.y - sy);
        ymax = std::max(ymax, g.mean.y + sy);
    }
    mi.region_min = {xmin, ymin};
    mi.region_max = {xmax, ymax};
    return mi;
}

void validate(const ScenarioConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (cfg.M < 0) fail("M must be >= 0");
    if (cfg.L < 0) fail("L must be >= 0");
    if (cfg.K < 1) fail("K must be >= 1");
    if (!(cfg.r > 0.0)) fail("r must be positive");
    if (!(cfg.d >= 0.0 && cfg.d < cfg.r)) fail("d must satisfy 0 <= d < r");
    if (cfg.N_max < 0) fail("N_max must be >= 0");
    if (!(cfg.epsilon > 0.0)) fail("epsilon must be positive");
    if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) fail("gamma must lie in [0,1]");
    if (!(cfg.a > 0.0) || !(cfg.b > 0.0)) fail("a and b must be positive");
    if (!(cfg.kappa > 0.0)) fail("kappa must be positive");
    if (!(cfg.eta > 0.0)) fail("eta must be positive");
    if (!(cfg.s >= 0.0)) fail("s must be >= 0");
    if (!(cfg.tau >= 0.0)) fail("tau must be >= 0");
    if (!(cfg.Ts > 0.0)) fail("Ts must be positive");
    if (!(cfg.t_end >= 0.0)) fail("t_end must be >= 0");
    if (cfg.snapshot_interval < 1) fail("snapshot_interval must be >= 1");
    if (!(cfg.recovery_window > 0.0)) fail("recovery_window must be positive");
    if (cfg.M > 0 && cfg.gmm.empty()) fail("gmm must have at least one component");
    double wsum = 0.0;
    for (const auto& g : cfg.gmm) {
        if (!(g.weight >= 0.0)) fail("gmm weights must be >= 0");
        wsum += g.weight;
        if (std::fabs(g.cov[1] - g.cov[2]) > 1e-12) fail("gmm covariance must be symmetric");
        if (g.cov[0] < 0.0 || g.cov[3] < 0.0 ||
            g.cov[0] * g.cov[3] - g.cov[1] * g.cov[1] < -1e-9) {
            fail("gmm covariance must be positive semi-definite");
        }
    }
    if (!cfg.gmm.empty() && !(wsum > 0.0)) fail("gmm weights must not all be zero");
    for (const auto& ev : cfg.failure_events) {
        if (!(ev.time >= 0.0)) fail("failure event time must be >= 0");
        if (!(ev.fraction >= 0.0 && ev.fraction < 1.0)) fail("failure fraction must lie in [0,1)");
    }
    MapInit mi = cfg.resolved_map_init();
    if (mi.region_min.x > mi.region_max.x || mi.region_min.y > mi.region_max.y)
        fail("map_init region min must not exceed max");
    if (mi.vel_min.x > mi.vel_max.x || mi.vel_min.y > mi.vel_max.y)
        fail("map_init velocity min must not exceed max");
}

namespace {

void reject_unknown(const Json& j, const char* section,
                    std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) { ok = true; break; }
        }
        if (!ok) {
            throw ConfigError(std::string("config: unknown key '") + it.key() +
                              "' in section '" + section + "'");
        }
    }
}

double get_num(const Json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const Json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError(std::string("config: '") + key + "' must be an integer");
    return j[key].get<int>();
}

Vec2 get_vec2(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string("config: ") + what + " must be a 2-element number array");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(j, "top level",
                   {"counts", "radio", "kernels", "control", "association", "mobility",
                    "epidemic", "time", "gmm", "map_init", "failure_events", "dynamics",
                    "output", "seed"});
    ScenarioConfig cfg = default_config();
    if (j.contains("counts")) {
        const Json& c = j["counts"];
        reject_unknown(c, "counts", {"M", "L", "K"});
        cfg.M = get_int(c, "M", cfg.M);
        cfg.L = get_int(c, "L", cfg.L);
        cfg.K = get_int(c, "K", cfg.K);
    }
    if (j.contains("radio")) {
        const Json& c = j["radio"];
        reject_unknown(c, "radio", {"r", "d", "N_max", "h"});
        cfg.r = get_num(c, "r", cfg.r);
        cfg.d = get_num(c, "d", cfg.d);
        cfg.N_max = get_int(c, "N_max", cfg.N_max);
        cfg.h = get_num(c, "h", cfg.h);
    }
    if (j.contains("kernels")) {
        const Json& c = j["kernels"];
        reject_unknown(c, "kernels", {"epsilon", "gamma", "a", "b"});
        cfg.epsilon = get_num(c, "epsilon", cfg.epsilon);
        cfg.gamma = get_num(c, "gamma", cfg.gamma);
        cfg.a = get_num(c, "a", cfg.a);
        cfg.b = get_num(c, "b", cfg.b);
    }
    if (j.contains("control")) {
        const Json& c = j["control"];
        reject_unknown(c, "control", {"c1", "c2"});
        cfg.c1 = get_num(c, "c1", cfg.c1);
        cfg.c2 = get_num(c, "c2", cfg.c2);
    }
    if (j.contains("association")) {
        const Json& c = j["association"];
        reject_unknown(c, "association", {"kappa", "eta"});
        cfg.kappa = get_num(c, "kappa", cfg.kappa);
        cfg.eta = get_num(c, "eta", cfg.eta);
    }
    if (j.contains("mobility")) {
        const Json& c = j["mobility"];
        reject_unknown(c, "mobility", {"s"});
        cfg.s = get_num(c, "s", cfg.s);
    }
    if (j.contains("epidemic")) {
        const Json& c = j["epidemic"];
        reject_unknown(c, "epidemic", {"tau"});
        cfg.tau = get_num(c, "tau", cfg.tau);
    }
    if (j.contains("time")) {
        const Json& c = j["time"];
        reject_unknown(c, "time", {"Ts", "t_end"});
        cfg.Ts = get_num(c, "Ts", cfg.Ts);
        cfg.t_end = get_num(c, "t_end", cfg.t_end);
    }
    if (j.contains("gmm")) {
        const Json& c = j["gmm"];
        if (!c.is_array()) throw ConfigError("config: gmm must be an array");
        cfg.gmm.clear();
        for (const Json& gj : c) {
            reject_unknown(gj, "gmm component", {"weight", "mean", "cov"});
            GmmComponent g;
            g.weight = get_num(gj, "weight", 1.0);
            if (!gj.contains("mean")) throw ConfigError("config: gmm component needs 'mean'");
            g.mean = get_vec2(gj["mean"], "gmm mean");
            if (!gj.contains("cov")) throw ConfigError("config: gmm component needs 'cov'");
            const Json& cv = gj["cov"];
            if (!cv.is_array() || cv.size() != 2)
                throw ConfigError("config: gmm cov must be a 2x2 number array");
            Vec2 row0 = get_vec2(cv[0], "gmm cov row");
            Vec2 row1 = get_vec2(cv[1], "gmm cov row");
            g.cov = {row0.x, row0.y, row1.x, row1.y};
            cfg.gmm.push_back(g);
        }
    }
    if (j.contains("map_init")) {
        const Json& c = j["map_init"];
        reject_unknown(c, "map_init", {"region", "velocity"});
        MapInit mi = cfg.resolved_map_init();
        if (c.contains("region")) {
            reject_unknown(c["region"], "map_init.region", {"min", "max"});
            if (c["region"].contains("min")) mi.region_min = get_vec2(c["region"]["min"], "region min");
            if (c["region"].contains("max")) mi.region_max = get_vec2(c["region"]["max"], "region max");
        }
        if (c.contains("velocity")) {
            reject_unknown(c["velocity"], "map_init.velocity", {"min", "max"});
            if (c["velocity"].contains("min")) mi.vel_min = get_vec2(c["velocity"]["min"], "velocity min");
            if (c["velocity"].contains("max")) mi.vel_max = get_vec2(c["velocity"]["max"], "velocity max");
        }
        cfg.map_init = mi;
    }
    if (j.contains("failure_events")) {
        const Json& c = j["failure_events"];
        if (!c.is_array()) throw ConfigError("config: failure_events must be an array");
        cfg.failure_events.clear();
        for (const Json& ej : c) {
            reject_unknown(ej, "failure event", {"time", "fraction"});
            FailureEvent ev;
            ev.time = get_num(ej, "time", 0.0);
            ev.fraction = get_num(ej, "fraction", 0.0);
            cfg.failure_events.push_back(ev);
        }
    }
    if (j.contains("dynamics")) {
        const Json& c = j["dynamics"];
        reject_unknown(c, "dynamics", {"scheme"});
        if (c.contains("scheme")) {
            std::string sc = c["scheme"].get<std::string>();
            if (sc == "exact_hold") cfg.scheme = Scheme::ExactHold;
            else if (sc == "forward_difference") cfg.scheme = Scheme::ForwardDifference;
            else throw ConfigError("config: dynamics.scheme must be 'exact_hold' or 'forward_difference'");
        }
    }
    if (j.contains("output")) {
        const Json& c = j["output"];
        reject_unknown(c, "output", {"snapshot_interval", "recovery_window"});
        cfg.snapshot_interval = get_int(c, "snapshot_interval", cfg.snapshot_interval);
        cfg.recovery_window = get_num(c, "recovery_window", cfg.recovery_window);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            throw ConfigError("config: seed must be an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ScenarioConfig& cfg) {
    Json j;
    j["counts"] = {{"M", cfg.M}, {"L", cfg.L}, {"K", cfg.K}};
    j["radio"] = {{"r", cfg.r}, {"d", cfg.d}, {"N_max", cfg.N_max}, {"h", cfg.h}};
    j["kernels"] = {{"epsilon", cfg.epsilon}, {"gamma", cfg.gamma}, {"a", cfg.a}, {"b", cfg.b}};
    j["control"] = {{"c1", cfg.c1}, {"c2", cfg.c2}};
    j["association"] = {{"kappa", cfg.kappa}, {"eta", cfg.eta}};
    j["mobility"] = {{"s", cfg.s}};
    j["epidemic"] = {{"tau", cfg.tau}};
    j["time"] = {{"Ts", cfg.Ts}, {"t_end", cfg.t_end}};
    j["gmm"] = Json::array();
    for (const auto& g : cfg.gmm) {
        j["gmm"].push_back({{"weight", g.weight},
                            {"mean", {g.mean.x, g.mean.y}},
                            {"cov", {{g.cov[0], g.cov[1]}, {g.cov[2], g.cov[3]}}}});
    }
    MapInit mi = cfg.resolved_map_init();
    j["map_init"] = {
        {"region", {{"min", {mi.region_min.x, mi.region_min.y}},
                    {"max", {mi.region_max.x, mi.region_max.y}}}},
        {"velocity", {{"min", {mi.vel_min.x, mi.vel_min.y}},
                      {"max", {mi.vel_max.x, mi.vel_max.y}}}}};
    j["failure_events"] = Json::array();
    for (const auto& ev : cfg.failure_events) {
        j["failure_events"].push_back({{"time", ev.time}, {"fraction", ev.fraction}});
    }
    j["dynamics"] = {{"scheme", cfg.scheme == Scheme::ExactHold ? "exact_hold" : "forward_difference"}};
    j["output"] = {{"snapshot_interval", cfg.snapshot_interval},
                   {"recovery_window", cfg.recovery_window}};
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

SimulationState sample_initial_state(const ScenarioConfig& cfg, Rng& rng) {
    validate(cfg);
    SimulationState st;
    st.msds.reserve(cfg.M);

    double wsum = 0.0;
    for (const auto& g : cfg.gmm) wsum += g.weight;

    // Lower Cholesky factors; zero rows handle degenerate (point-mass) components.
    struct Chol { double l00, l10, l11; };
    std::vector<Chol> chol;
    chol.reserve(cfg.gmm.size());
    for (const auto& g : cfg.gmm) {
        Chol c{};
        c.l00 = std::sqrt(std::max(g.cov[0], 0.0));
        c.l10 = c.l00 > 0.0 ? g.cov[1] / c.l00 : 0.0;
        c.l11 = std::sqrt(std::max(g.cov[3] - c.l10 * c.l10, 0.0));
        chol.push_back(c);
    }

    for (int i = 0; i < cfg.M; ++i) {
        double u = rng.uniform() * wsum;
        std::size_t comp = 0;
        double acc = 0.0;
        for (std::size_t k = 0; k < cfg.gmm.size(); ++k) {
            acc += cfg.gmm[k].weight;
            if (u < acc) { comp = k; break; }
            comp = k;
        }
        double z1 = rng.normal();
        double z2 = rng.normal();
        const Chol& c = chol[comp];
        Vec2 pos = cfg.gmm[comp].mean + Vec2{c.l00 * z1, c.l10 * z1 + c.l11 * z2};
        if (!std::isfinite(pos.x) || !std::isfinite(pos.y))
            throw SimError("sampled MSD position is not finite");
        st.msds.push_back({i + 1, pos, 0, false});
    }

    MapInit mi = cfg.resolved_map_init();
    st.maps.reserve(cfg.L);
    for (int i = 0; i < cfg.L; ++i) {
        Vec2 pos{rng.uniform(mi.region_min.x, mi.region_max.x),
                 rng.uniform(mi.region_min.y, mi.region_max.y)};
        st.maps.push_back({i + 1, pos, {0, 0}, true, 0});
    }
    for (int i = 0; i < cfg.L; ++i) {
        st.maps[i].velocity = {rng.uniform(mi.vel_min.x, mi.vel_max.x),
                               rng.uniform(mi.vel_min.y, mi.vel_max.y)};
    }
    st.cluster_centers.assign(cfg.K, Vec2{0, 0});
    return st;
}

}  // namespace mapsim
