#include "mapsim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mapsim/association.hpp"
#include "mapsim/baselines.hpp"
#include "mapsim/clustering.hpp"
#include "mapsim/controller.hpp"
#include "mapsim/dynamics.hpp"
#include "mapsim/errors.hpp"
#include "mapsim/events.hpp"
#include "mapsim/graph.hpp"

namespace mapsim {

using Json = nlohmann::ordered_json;

namespace {

std::vector<Vec2> msd_positions(const SimulationState& st) {
    std::vector<Vec2> pts;
    pts.reserve(st.msds.size());
    for (const auto& m : st.msds) pts.push_back(m.position);
    return pts;
}

MetricsRecord make_record(double t, const Assignment& asg, const ProximityGraph& g,
                          const ScenarioConfig& cfg) {
    MetricsRecord rec;
    rec.t = t;
    rec.coverage = cfg.M > 0 ? coverage_fraction(asg, cfg.M) : 0.0;
    rec.fiedler = fiedler_value(laplacian(g), g.n);
    rec.info_penetration = info_penetration(g, cfg.tau);
    rec.alive_maps = g.n;
    return rec;
}

}  // namespace

RunOutput run(const ScenarioConfig& cfg, const RunOptions& opts) {
    validate(cfg);
    RunOutput out;
    out.config = cfg;
    out.seed = cfg.seed;

    Rng placement_rng = derive_stream(cfg.seed, "placement");
    Rng mobility_rng = derive_stream(cfg.seed, "mobility");
    Rng failure_rng = derive_stream(cfg.seed, "failure");
    Rng clustering_rng = derive_stream(cfg.seed, "clustering");

    SimulationState st = sample_initial_state(cfg, placement_rng);
    const long steps = static_cast<long>(std::floor(cfg.t_end / cfg.Ts + 1e-9));
    const Discretization disc{cfg.Ts, cfg.scheme};

    auto trace = [&](long k, const std::string& stage) {
        if (opts.trace) out.trace.push_back(std::to_string(k) + ":" + stage);
    };

    // Initial clustering seeds the warm-start chain; the t=0 record and
    // snapshot reflect the freshly sampled state.
    trace(0, "sample");
    ClusterSet clusters =
        lloyd(msd_positions(st), cfg.K, nullptr, clustering_rng);
    st.cluster_centers = clusters.centers;
    trace(0, "cluster");
    Assignment asg = match(st.msds, st.maps, cfg);
    write_back(asg, st.msds, st.maps);
    ProximityGraph graph = build_graph(st.maps, cfg);
    trace(0, "match");
    out.series.push_back(make_record(0.0, asg, graph, cfg));
    trace(0, "metrics");
    out.snapshots.push_back(st);
    trace(0, "snapshot");

    std::vector<char> applied(cfg.failure_events.size(), 0);

    for (long k = 1; k <= steps; ++k) {
        try {
            clusters = lloyd(msd_positions(st), cfg.K, &st.cluster_centers, clustering_rng);
            st.cluster_centers = clusters.centers;
            trace(k, "cluster");

            // The state is untouched since the previous metrics pass, so the
            // cached assignment and graph are exactly this step's match result.
            trace(k, "match");

            ControlInput u = control_input(st.maps, graph, asg.loads, clusters, cfg);
            trace(k, "control");

            step_dynamics(st.maps, u, disc);
            st.t = static_cast<double>(k) * cfg.Ts;
            st.step_index = k;
            trace(k, "integrate");

            trace(k, "events");
            for (std::size_t e = 0; e < cfg.failure_events.size(); ++e) {
                if (!applied[e] && cfg.failure_events[e].time <= st.t + 1e-9) {
                    apply_failure(st.maps, cfg.failure_events[e], failure_rng);
                    applied[e] = 1;
                    trace(k, "event_applied fraction=" +
                                 std::to_string(cfg.failure_events[e].fraction));
                }
            }

            step_mobility(st.msds, cfg.s, mobility_rng);
            trace(k, "mobility");

            asg = match(st.msds, st.maps, cfg);
            write_back(asg, st.msds, st.maps);
            graph = build_graph(st.maps, cfg);
            out.series.push_back(make_record(st.t, asg, graph, cfg));
            trace(k, "metrics");

            if (k % cfg.snapshot_interval == 0 || k == steps) {
                out.snapshots.push_back(st);
                trace(k, "snapshot");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw SimError("step " + std::to_string(k) + ": " + e.what());
        }
    }

    for (std::size_t e = 0; e < cfg.failure_events.size(); ++e) {
        if (!applied[e]) continue;
        const FailureEvent& ev = cfg.failure_events[e];
        bool has_pre = false;
        for (const auto& rec : out.series) {
            if (rec.t >= ev.time - cfg.recovery_window && rec.t < ev.time) {
                has_pre = true;
                break;
            }
        }
        if (!has_pre) continue;
        out.recovery.push_back({ev, recovery_report(out.series, ev.time, cfg.recovery_window)});
    }
    return out;
}

namespace {

void set_sweep_param(ScenarioConfig& cfg, const std::string& param, double value) {
    if (param == "L" || param == "K") {
        double rounded = std::round(value);
        if (std::fabs(value - rounded) > 1e-9 || rounded < 0)
            throw ConfigError("sweep: " + param + " values must be non-negative integers");
        if (param == "L") cfg.L = static_cast<int>(rounded);
        else cfg.K = static_cast<int>(rounded);
    } else if (param == "s") {
        cfg.s = value;
    } else if (param == "failure_fraction") {
        if (cfg.failure_events.empty()) {
            cfg.failure_events.push_back({10.0, value});
        } else {
            cfg.failure_events[0].fraction = value;
        }
    } else {
        throw ConfigError("sweep: unknown parameter '" + param + "'");
    }
    validate(cfg);
}

}  // namespace

std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const std::string& param,
                              const std::vector<double>& values, const std::string& method) {
    validate(cfg);
    if (values.empty()) throw ConfigError("sweep: no values given");
    if (method != "dynamic" && method != "p_median" && method != "circle_packing")
        throw ConfigError("sweep: unknown method '" + method + "'");
    if (method != "dynamic" && param != "L")
        throw ConfigError("sweep: static baselines support varying L only");

    std::vector<SweepPoint> points;
    for (double v : values) {
        ScenarioConfig c = cfg;
        set_sweep_param(c, param, v);
        SweepPoint pt;
        pt.value = v;
        if (method == "dynamic") {
            RunOutput ro = run(c);
            const double t_last = ro.series.back().t;
            double cov = 0, fie = 0, inf = 0;
            int n = 0;
            for (const auto& rec : ro.series) {
                if (rec.t >= t_last - c.recovery_window) {
                    cov += rec.coverage;
                    fie += rec.fiedler;
                    inf += rec.info_penetration;
                    n++;
                }
            }
            pt.final_mean = {t_last, cov / n, fie / n, inf / n, ro.series.back().alive_maps};
        } else {
            Rng placement_rng = derive_stream(c.seed, "placement");
            SimulationState st = sample_initial_state(c, placement_rng);
            Rng baseline_rng = derive_stream(c.seed, "baselines");
            Placement pl = method == "p_median"
                               ? p_median(msd_positions(st), c.L, baseline_rng)
                               : circle_packing(msd_positions(st), c.L, c.r, c.d, baseline_rng);
            pt.final_mean = score_placement(pl, st.msds, c);
        }
        points.push_back(pt);
    }
    return points;
}

std::vector<CompareRow> compare(const ScenarioConfig& cfg) {
    RunOutput ro = run(cfg);
    const SimulationState& fin = ro.snapshots.back();
    std::vector<CompareRow> rows;
    rows.push_back({"dynamic", ro.series.back()});

    Rng pm_rng = derive_stream(cfg.seed, "baselines");
    Placement pm = p_median(msd_positions(fin), cfg.L, pm_rng);
    rows.push_back({"p_median", score_placement(pm, fin.msds, cfg)});

    Rng cp_rng = derive_stream(cfg.seed, "baselines");
    Placement cp = circle_packing(msd_positions(fin), cfg.L, cfg.r, cfg.d, cp_rng);
    rows.push_back({"circle_packing", score_placement(cp, fin.msds, cfg)});
    return rows;
}

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

std::string record_csv_row(double first, const MetricsRecord& rec) {
    std::string row = fmt("%.4f", first);
    row += "," + fmt("%.6f", rec.coverage);
    row += "," + fmt("%.12g", rec.fiedler);
    row += "," + fmt("%.6f", rec.info_penetration);
    row += "," + std::to_string(rec.alive_maps);
    return row;
}

}  // namespace

std::string metrics_csv(const std::vector<MetricsRecord>& series) {
    std::string csv = "t,coverage,fiedler,info_penetration,alive_maps\n";
    for (const auto& rec : series) csv += record_csv_row(rec.t, rec) + "\n";
    return csv;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string csv = "value,coverage,fiedler,info_penetration,alive_maps\n";
    for (const auto& pt : points) csv += record_csv_row(pt.value, pt.final_mean) + "\n";
    return csv;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::string csv = "method,coverage,fiedler,info_penetration,alive_maps\n";
    for (const auto& row : rows) {
        csv += row.method + "," + fmt("%.6f", row.record.coverage) + "," +
               fmt("%.12g", row.record.fiedler) + "," +
               fmt("%.6f", row.record.info_penetration) + "," +
               std::to_string(row.record.alive_maps) + "\n";
    }
    return csv;
}

namespace {

Json state_to_json(const SimulationState& st) {
    Json j;
    j["t"] = st.t;
    j["step_index"] = st.step_index;
    Json msds = Json::array();
    for (const auto& m : st.msds) {
        msds.push_back({m.position.x, m.position.y, m.assigned_map, m.covered ? 1 : 0});
    }
    j["msds"] = std::move(msds);
    Json maps = Json::array();
    for (const auto& m : st.maps) {
        maps.push_back({m.position.x, m.position.y, m.velocity.x, m.velocity.y,
                        m.alive ? 1 : 0, m.load});
    }
    j["maps"] = std::move(maps);
    Json centers = Json::array();
    for (const auto& c : st.cluster_centers) centers.push_back({c.x, c.y});
    j["cluster_centers"] = std::move(centers);
    return j;
}

SimulationState state_from_json(const Json& j) {
    SimulationState st;
    st.t = j.at("t").get<double>();
    st.step_index = j.at("step_index").get<long>();
    int id = 1;
    for (const auto& row : j.at("msds")) {
        MsdState m;
        m.id = id++;
        m.position = {row.at(0).get<double>(), row.at(1).get<double>()};
        m.assigned_map = row.at(2).get<int>();
        m.covered = row.at(3).get<int>() != 0;
        st.msds.push_back(m);
    }
    id = 1;
    for (const auto& row : j.at("maps")) {
        MapState m;
        m.id = id++;
        m.position = {row.at(0).get<double>(), row.at(1).get<double>()};
        m.velocity = {row.at(2).get<double>(), row.at(3).get<double>()};
        m.alive = row.at(4).get<int>() != 0;
        m.load = row.at(5).get<int>();
        st.maps.push_back(m);
    }
    for (const auto& row : j.at("cluster_centers")) {
        st.cluster_centers.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    }
    return st;
}

}  // namespace

std::string run_output_json(const RunOutput& out) {
    Json j;
    j["seed"] = out.seed;
    j["config"] = Json::parse(config_to_json_text(out.config));
    Json series;
    Json t = Json::array(), cov = Json::array(), fie = Json::array(), inf = Json::array(),
         alive = Json::array();
    for (const auto& rec : out.series) {
        t.push_back(rec.t);
        cov.push_back(rec.coverage);
        fie.push_back(rec.fiedler);
        inf.push_back(rec.info_penetration);
        alive.push_back(rec.alive_maps);
    }
    series["t"] = std::move(t);
    series["coverage"] = std::move(cov);
    series["fiedler"] = std::move(fie);
    series["info_penetration"] = std::move(inf);
    series["alive_maps"] = std::move(alive);
    j["series"] = std::move(series);
    Json snaps = Json::array();
    for (const auto& st : out.snapshots) snaps.push_back(state_to_json(st));
    j["snapshots"] = std::move(snaps);
    Json recov = Json::array();
    for (const auto& er : out.recovery) {
        Json reports = Json::array();
        for (const auto& r : er.reports) {
            reports.push_back({{"metric", r.metric},
                               {"pre", r.pre},
                               {"post", r.post},
                               {"ratio", r.defined ? Json(r.ratio) : Json(nullptr)}});
        }
        recov.push_back({{"time", er.event.time},
                         {"fraction", er.event.fraction},
                         {"reports", std::move(reports)}});
    }
    j["recovery"] = std::move(recov);
    if (!out.trace.empty()) j["trace"] = out.trace;
    return j.dump(2) + "\n";
}

RunOutput run_output_from_json_text(const std::string& text) try {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("run output: invalid JSON: ") + e.what());
    }
    RunOutput out;
    out.seed = j.at("seed").get<std::uint64_t>();
    out.config = config_from_json_text(j.at("config").dump());
    const Json& s = j.at("series");
    const auto& t = s.at("t");
    for (std::size_t i = 0; i < t.size(); ++i) {
        MetricsRecord rec;
        rec.t = s.at("t").at(i).get<double>();
        rec.coverage = s.at("coverage").at(i).get<double>();
        rec.fiedler = s.at("fiedler").at(i).get<double>();
        rec.info_penetration = s.at("info_penetration").at(i).get<double>();
        rec.alive_maps = s.at("alive_maps").at(i).get<int>();
        out.series.push_back(rec);
    }
    for (const auto& sj : j.at("snapshots")) out.snapshots.push_back(state_from_json(sj));
    for (const auto& rj : j.at("recovery")) {
        EventReports er;
        er.event.time = rj.at("time").get<double>();
        er.event.fraction = rj.at("fraction").get<double>();
        for (const auto& rep : rj.at("reports")) {
            RecoveryReport r;
            r.metric = rep.at("metric").get<std::string>();
            r.pre = rep.at("pre").get<double>();
            r.post = rep.at("post").get<double>();
            r.defined = !rep.at("ratio").is_null();
            r.ratio = r.defined ? rep.at("ratio").get<double>() : 0.0;
            er.reports.push_back(r);
        }
        out.recovery.push_back(er);
    }
    if (j.contains("trace")) {
        for (const auto& line : j.at("trace")) out.trace.push_back(line.get<std::string>());
    }
    return out;
} catch (const Json::exception& e) {
    throw ConfigError(std::string("run output: ") + e.what());
}

std::string report_text(const RunOutput& out) {
    std::ostringstream os;
    const MetricsRecord& fin = out.series.back();
    os << "simulation report\n";
    os << "seed: " << out.seed << "\n";
    os << "records: " << out.series.size() << "\n";
    os << "final: t=" << fmt("%.4f", fin.t) << " coverage=" << fmt("%.6f", fin.coverage)
       << " fiedler=" << fmt("%.12g", fin.fiedler)
       << " info_penetration=" << fmt("%.6f", fin.info_penetration)
       << " alive_maps=" << fin.alive_maps << "\n";
    os << "\nsnapshots: " << out.snapshots.size() << "\n";
    for (const auto& st : out.snapshots) {
        int alive = 0;
        for (const auto& m : st.maps) alive += m.alive ? 1 : 0;
        os << "  t=" << fmt("%.4f", st.t) << " step=" << st.step_index
           << " alive_maps=" << alive << "\n";
    }
    os << "\nrecovery reports: " << out.recovery.size() << "\n";
    for (const auto& er : out.recovery) {
        os << "  event t=" << fmt("%.4f", er.event.time)
           << " fraction=" << fmt("%.4f", er.event.fraction) << "\n";
        for (const auto& r : er.reports) {
            os << "    " << r.metric << ": pre=" << fmt("%.6f", r.pre)
               << " post=" << fmt("%.6f", r.post) << " ratio=";
            if (r.defined) {
                os << fmt("%.6f", r.ratio);
            } else {
                os << "undefined";
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace mapsim
