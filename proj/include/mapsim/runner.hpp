#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapsim/domain.hpp"
#include "mapsim/metrics.hpp"

namespace mapsim {

struct RunOptions {
    bool trace = false;
};

struct EventReports {
    FailureEvent event;
    std::vector<RecoveryReport> reports;
};

struct RunOutput {
    ScenarioConfig config;
    std::uint64_t seed = 0;
    std::vector<MetricsRecord> series;        // t = 0, Ts, ..., steps*Ts
    std::vector<SimulationState> snapshots;   // t = 0, every snapshot_interval, final
    std::vector<EventReports> recovery;
    std::vector<std::string> trace;           // per-step sub-stage audit log
};

// Executes the full per-step loop: cluster, match, control, integrate, due
// failure events, MSD mobility, metrics record.
RunOutput run(const ScenarioConfig& cfg, const RunOptions& opts = {});

struct SweepPoint {
    double value = 0.0;
    MetricsRecord final_mean;  // metrics averaged over the final window
};

// param: one of L, failure_fraction, s, K. method: dynamic (full simulation per
// value) or p_median / circle_packing (static scoring per value, L only).
std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const std::string& param,
                              const std::vector<double>& values,
                              const std::string& method = "dynamic");

struct CompareRow {
    std::string method;
    MetricsRecord record;
};

// Dynamic run vs static baselines placed and scored on the run's final MSD set.
std::vector<CompareRow> compare(const ScenarioConfig& cfg);

std::string metrics_csv(const std::vector<MetricsRecord>& series);
std::string sweep_csv(const std::vector<SweepPoint>& points);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string run_output_json(const RunOutput& out);
RunOutput run_output_from_json_text(const std::string& text);
std::string report_text(const RunOutput& out);

}  // namespace mapsim
