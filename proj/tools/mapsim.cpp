#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mapsim/domain.hpp"
#include "mapsim/errors.hpp"
#include "mapsim/render.hpp"
#include "mapsim/runner.hpp"

namespace fs = std::filesystem;
using namespace mapsim;

namespace {

void apply_seed_override(ScenarioConfig& cfg) {
    const char* env = std::getenv("MAPSIM_SEED");
    if (!env || !*env) return;
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
        throw ConfigError(std::string("MAPSIM_SEED must be an unsigned integer, got '") + env +
                          "'");
    cfg.seed = static_cast<std::uint64_t>(v);
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("--values: '" + item + "' is not a number");
        }
        if (used != item.size()) throw ConfigError("--values: '" + item + "' is not a number");
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("--values: empty list");
    return values;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SimError("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw SimError("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int do_run(const std::string& config_path, const std::string& out_dir, bool trace) {
    ScenarioConfig cfg = load_config(config_path);
    apply_seed_override(cfg);
    RunOptions opts;
    opts.trace = trace;
    RunOutput out = run(cfg, opts);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "metrics.csv", metrics_csv(out.series));
    write_file(fs::path(out_dir) / "run_output.json", run_output_json(out));
    write_file(fs::path(out_dir) / "report.txt", report_text(out));
    const MetricsRecord& fin = out.series.back();
    std::cout << "run complete: t=" << fin.t << " coverage=" << fin.coverage
              << " fiedler=" << fin.fiedler << " info_penetration=" << fin.info_penetration
              << " alive_maps=" << fin.alive_maps << "\n";
    std::cout << "outputs in " << out_dir << "/\n";
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_dir, const std::string& vary,
             const std::string& values_list, const std::string& method) {
    ScenarioConfig cfg = load_config(config_path);
    apply_seed_override(cfg);
    std::vector<SweepPoint> points = sweep(cfg, vary, parse_values(values_list), method);
    std::string csv = sweep_csv(points);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "sweep.csv", csv);
    std::cout << csv;
    return 0;
}

int do_compare(const std::string& config_path, const std::string& out_dir) {
    ScenarioConfig cfg = load_config(config_path);
    apply_seed_override(cfg);
    std::string csv = compare_csv(compare(cfg));
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "compare.csv", csv);
    std::cout << csv;
    return 0;
}

int do_render(const std::string& run_path, double at_t, const std::string& out_file) {
    RunOutput out = run_output_from_json_text(read_file(run_path));
    std::string svg = render_at(out, at_t);
    if (out_file.empty()) {
        std::cout << svg;
    } else {
        write_file(out_file, svg);
        std::cout << "wrote " << out_file << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-layer aerial access network simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string vary;
    std::string values_list;
    std::string method = "dynamic";
    std::string run_path;
    std::string out_file;
    double at_t = 0.0;
    bool trace = false;

    auto* run_cmd = app.add_subcommand("run", "simulate one scenario");
    run_cmd->add_option("config", config_path, "scenario config (JSON)")->required();
    run_cmd->add_option("--out", out_dir, "output directory (default: out)");
    run_cmd->add_flag("--trace", trace, "record the per-step sub-stage log");

    auto* sweep_cmd = app.add_subcommand("sweep", "repeat the scenario over parameter values");
    sweep_cmd->add_option("config", config_path, "scenario config (JSON)")->required();
    sweep_cmd->add_option("--vary", vary, "parameter: L, failure_fraction, s, K")->required();
    sweep_cmd->add_option("--values", values_list, "comma-separated values")->required();
    sweep_cmd->add_option("--method", method, "dynamic, p_median, circle_packing");
    sweep_cmd->add_option("--out", out_dir, "output directory (default: out)");

    auto* compare_cmd =
        app.add_subcommand("compare", "dynamic run vs static baselines on its final state");
    compare_cmd->add_option("config", config_path, "scenario config (JSON)")->required();
    compare_cmd->add_option("--out", out_dir, "output directory (default: out)");

    auto* render_cmd = app.add_subcommand("render", "draw a stored snapshot as SVG");
    render_cmd->add_option("run-output", run_path, "run_output.json from a previous run")
        ->required();
    render_cmd->add_option("--at", at_t, "time of the snapshot to draw")->required();
    render_cmd->add_option("--out", out_file, "SVG file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) return do_run(config_path, out_dir, trace);
        if (*sweep_cmd) return do_sweep(config_path, out_dir, vary, values_list, method);
        if (*compare_cmd) return do_compare(config_path, out_dir);
        if (*render_cmd) return do_render(run_path, at_t, out_file);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
