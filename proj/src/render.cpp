#include "mapsim/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mapsim/errors.hpp"
#include "mapsim/graph.hpp"

namespace mapsim {

namespace {

constexpr double kCanvasWidth = 900.0;

struct Frame {
    double xmin, ymin, xmax, ymax, scale, height;

    double px(double x) const { return (x - xmin) * scale; }
    // SVG y grows downward.
    double py(double y) const { return (ymax - y) * scale; }
};

Frame fit_frame(const SimulationState& st, double pad) {
    Frame f{-1, -1, 1, 1, 1, 1};
    bool first = true;
    auto grow = [&](Vec2 p) {
        if (first) {
            f.xmin = f.xmax = p.x;
            f.ymin = f.ymax = p.y;
            first = false;
        } else {
            f.xmin = std::min(f.xmin, p.x);
            f.xmax = std::max(f.xmax, p.x);
            f.ymin = std::min(f.ymin, p.y);
            f.ymax = std::max(f.ymax, p.y);
        }
    };
    for (const auto& m : st.msds) grow(m.position);
    for (const auto& m : st.maps) grow(m.position);
    for (const auto& c : st.cluster_centers) grow(c);
    f.xmin -= pad;
    f.ymin -= pad;
    f.xmax += pad;
    f.ymax += pad;
    f.scale = kCanvasWidth / (f.xmax - f.xmin);
    f.height = (f.ymax - f.ymin) * f.scale;
    return f;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const SimulationState& st, const ScenarioConfig& cfg) {
    const Frame f = fit_frame(st, cfg.r);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kCanvasWidth)
       << "\" height=\"" << num(f.height + 24) << "\" viewBox=\"0 0 " << num(kCanvasWidth)
       << " " << num(f.height + 24) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    os << "<g fill=\"#4a90d9\" fill-opacity=\"0.06\" stroke=\"#4a90d9\" "
          "stroke-opacity=\"0.25\" stroke-width=\"0.5\">\n";
    for (const auto& m : st.maps) {
        if (!m.alive) continue;
        os << "<circle cx=\"" << num(f.px(m.position.x)) << "\" cy=\"" << num(f.py(m.position.y))
           << "\" r=\"" << num(cfg.r * f.scale) << "\"/>\n";
    }
    os << "</g>\n";

    ProximityGraph g = build_graph(st.maps, cfg);
    std::vector<Vec2> node_pos(g.n);
    {
        std::size_t i = 0;
        for (const auto& m : st.maps) {
            if (m.alive) node_pos[i++] = m.position;
        }
    }
    os << "<g stroke=\"#777777\">\n";
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            double a = g.at(i, j);
            if (a <= 0) continue;
            os << "<line x1=\"" << num(f.px(node_pos[i].x)) << "\" y1=\""
               << num(f.py(node_pos[i].y)) << "\" x2=\"" << num(f.px(node_pos[j].x))
               << "\" y2=\"" << num(f.py(node_pos[j].y)) << "\" stroke-width=\""
               << num(0.3 + 1.7 * a) << "\"/>\n";
        }
    }
    os << "</g>\n";

    os << "<g>\n";
    for (const auto& m : st.msds) {
        os << "<circle cx=\"" << num(f.px(m.position.x)) << "\" cy=\"" << num(f.py(m.position.y))
           << "\" r=\"1.6\" fill=\"" << (m.covered ? "#2e9e4f" : "#c0392b") << "\"/>\n";
    }
    os << "</g>\n";

    for (const auto& m : st.maps) {
        double cx = f.px(m.position.x), cy = f.py(m.position.y);
        if (m.alive) {
            os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy)
               << "\" r=\"4\" fill=\"#1b4f9c\"/>\n";
        } else {
            os << "<path d=\"M" << num(cx - 4) << " " << num(cy - 4) << " L" << num(cx + 4)
               << " " << num(cy + 4) << " M" << num(cx - 4) << " " << num(cy + 4) << " L"
               << num(cx + 4) << " " << num(cy - 4)
               << "\" stroke=\"#888888\" stroke-width=\"1.5\"/>\n";
        }
    }

    for (const auto& c : st.cluster_centers) {
        double cx = f.px(c.x), cy = f.py(c.y);
        os << "<path d=\"M" << num(cx) << " " << num(cy - 6) << " L" << num(cx + 6) << " "
           << num(cy) << " L" << num(cx) << " " << num(cy + 6) << " L" << num(cx - 6) << " "
           << num(cy) << " Z\" fill=\"#e67e22\"/>\n";
    }

    int alive = 0, covered = 0;
    for (const auto& m : st.maps) alive += m.alive ? 1 : 0;
    for (const auto& m : st.msds) covered += m.covered ? 1 : 0;
    os << "<text x=\"8\" y=\"" << num(f.height + 17)
       << "\" font-family=\"monospace\" font-size=\"13\">t=" << num(st.t)
       << "  alive_maps=" << alive << "  covered=" << covered << "/" << st.msds.size()
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_at(const RunOutput& out, double t) {
    if (out.snapshots.empty()) throw SimError("render: run output holds no snapshots");
    const SimulationState* best = &out.snapshots.front();
    for (const auto& st : out.snapshots) {
        if (std::fabs(st.t - t) < std::fabs(best->t - t)) best = &st;
    }
    return render_svg(*best, out.config);
}

}  // namespace mapsim
