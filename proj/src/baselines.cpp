#include "mapsim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mapsim/association.hpp"
#include "mapsim/errors.hpp"
#include "mapsim/graph.hpp"

namespace mapsim {

namespace {

constexpr double kGeomEps = 1e-9;

bool inside(const Circle& c, Vec2 p) {
    return norm(p - c.center) <= c.radius + kGeomEps * (1.0 + c.radius);
}

Circle circle_two(Vec2 a, Vec2 b) {
    Vec2 mid = 0.5 * (a + b);
    return {mid, 0.5 * norm(a - b)};
}

Circle circle_three(Vec2 a, Vec2 b, Vec2 c) {
    double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (std::fabs(d) < 1e-12) {
        Circle best = circle_two(a, b);
        Circle cb = circle_two(a, c);
        if (cb.radius > best.radius) best = cb;
        Circle cc = circle_two(b, c);
        if (cc.radius > best.radius) best = cc;
        return best;
    }
    double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
    Vec2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return {center, norm(a - center)};
}

}  // namespace

Circle min_enclosing_circle(std::vector<Vec2> points, Rng& rng) {
    if (points.empty()) return {{0, 0}, 0.0};
    for (std::size_t i = points.size() - 1; i > 0; --i) {
        std::swap(points[i], points[rng.index(i + 1)]);
    }
    Circle c{points[0], 0.0};
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (inside(c, points[i])) continue;
        c = {points[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (inside(c, points[j])) continue;
            c = circle_two(points[i], points[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (inside(c, points[k])) continue;
                c = circle_three(points[i], points[j], points[k]);
            }
        }
    }
    return c;
}

namespace {

double assignment_objective(const std::vector<Vec2>& pts, const std::vector<Vec2>& centers) {
    double total = 0.0;
    for (const Vec2& p : pts) {
        double best = std::numeric_limits<double>::max();
        for (const Vec2& c : centers) best = std::min(best, norm(p - c));
        total += best;
    }
    return total;
}

Vec2 weiszfeld(const std::vector<Vec2>& pts, Vec2 start) {
    Vec2 y = start;
    for (int it = 0; it < 100; ++it) {
        Vec2 num{0, 0};
        double den = 0.0;
        for (const Vec2& p : pts) {
            double dist = std::max(norm(p - y), 1e-12);
            num += (1.0 / dist) * p;
            den += 1.0 / dist;
        }
        Vec2 next = (1.0 / den) * num;
        double moved = norm(next - y);
        y = next;
        if (moved < 1e-9) break;
    }
    return y;
}

std::vector<Vec2> seed_distance_weighted(const std::vector<Vec2>& pts, int L, Rng& rng) {
    std::vector<Vec2> centers;
    centers.reserve(L);
    centers.push_back(pts[rng.index(pts.size())]);
    std::vector<double> dist(pts.size());
    while (static_cast<int>(centers.size()) < L) {
        double total = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double best = std::numeric_limits<double>::max();
            for (const Vec2& c : centers) best = std::min(best, norm(pts[i] - c));
            dist[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            centers.push_back(pts[rng.index(pts.size())]);
            continue;
        }
        double u = rng.uniform() * total;
        std::size_t pick = pts.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            acc += dist[i];
            if (u < acc) { pick = i; break; }
        }
        centers.push_back(pts[pick]);
    }
    return centers;
}

}  // namespace

Placement p_median(const std::vector<Vec2>& msd_positions, int L, Rng& rng, int restarts,
                   std::vector<double>* objective_history) {
    if (L < 1) throw ConfigError("p_median: L must be >= 1");
    if (restarts < 1) throw ConfigError("p_median: restarts must be >= 1");
    Placement best;
    best.method = "p_median";
    if (msd_positions.empty()) {
        best.positions.assign(L, Vec2{0, 0});
        return best;
    }
    double best_obj = std::numeric_limits<double>::max();

    std::vector<int> member(msd_positions.size());
    for (int rs = 0; rs < restarts; ++rs) {
        std::vector<Vec2> centers = seed_distance_weighted(msd_positions, L, rng);
        double prev_obj = std::numeric_limits<double>::max();
        for (int iter = 0; iter < 100; ++iter) {
            for (std::size_t i = 0; i < msd_positions.size(); ++i) {
                double bd = std::numeric_limits<double>::max();
                int bk = 0;
                for (int k = 0; k < L; ++k) {
                    double dd = norm(msd_positions[i] - centers[k]);
                    if (dd < bd) { bd = dd; bk = k; }
                }
                member[i] = bk;
            }
            std::vector<std::vector<Vec2>> groups(L);
            for (std::size_t i = 0; i < msd_positions.size(); ++i) {
                groups[member[i]].push_back(msd_positions[i]);
            }
            for (int k = 0; k < L; ++k) {
                if (groups[k].empty()) {
                    double far_d = -1.0;
                    std::size_t far_i = 0;
                    for (std::size_t i = 0; i < msd_positions.size(); ++i) {
                        double dd = norm(msd_positions[i] - centers[member[i]]);
                        if (dd > far_d) { far_d = dd; far_i = i; }
                    }
                    centers[k] = msd_positions[far_i];
                } else {
                    centers[k] = weiszfeld(groups[k], centers[k]);
                }
            }
            double obj = assignment_objective(msd_positions, centers);
            if (objective_history) objective_history->push_back(obj);
            if (prev_obj - obj < 1e-9) { prev_obj = std::min(prev_obj, obj); break; }
            prev_obj = obj;
        }
        if (prev_obj < best_obj) {
            best_obj = prev_obj;
            best.positions = centers;
        }
    }
    return best;
}

Placement circle_packing(const std::vector<Vec2>& msd_positions, int L, double r_cov,
                         double pitch, Rng& rng) {
    if (L < 1) throw ConfigError("circle_packing: L must be >= 1");
    if (!(r_cov > 0.0)) throw ConfigError("circle_packing: r_cov must be positive");
    if (!(pitch > 0.0)) throw ConfigError("circle_packing: pitch must be positive");
    Placement out;
    out.method = "circle_packing";

    Circle mec = min_enclosing_circle(msd_positions, rng);
    if (mec.radius < 1e-12) {
        out.positions.assign(L, mec.center);
        return out;
    }

    const double row_h = pitch * std::sqrt(3.0) / 2.0;
    const int jmax = static_cast<int>(std::ceil(mec.radius / row_h)) + 1;
    const int imax = static_cast<int>(std::ceil(mec.radius / pitch)) + 1;
    std::vector<Vec2> sites;
    for (int j = -jmax; j <= jmax; ++j) {
        double y = j * row_h;
        double x_off = (j % 2 != 0) ? 0.5 * pitch : 0.0;
        for (int i = -imax; i <= imax; ++i) {
            Vec2 rel{i * pitch + x_off, y};
            if (norm2(rel) <= mec.radius * mec.radius + kGeomEps) sites.push_back(rel);
        }
    }
    std::sort(sites.begin(), sites.end(), [](Vec2 a, Vec2 b) {
        double da = norm2(a), db = norm2(b);
        if (da != db) return da < db;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });

    if (static_cast<int>(sites.size()) >= L) {
        sites.resize(L);
    } else {
        int extras = L - static_cast<int>(sites.size());
        for (int k = 0; k < extras; ++k) {
            double ang = 2.0 * 3.141592653589793238462643 * k / extras;
            sites.push_back({mec.radius * std::cos(ang), mec.radius * std::sin(ang)});
        }
    }
    out.positions.reserve(L);
    for (Vec2 rel : sites) out.positions.push_back(mec.center + rel);
    return out;
}

MetricsRecord score_placement(const Placement& placement, const std::vector<MsdState>& msds,
                              const ScenarioConfig& cfg) {
    std::vector<MapState> maps;
    maps.reserve(placement.positions.size());
    for (std::size_t k = 0; k < placement.positions.size(); ++k) {
        maps.push_back({static_cast<int>(k) + 1, placement.positions[k], {0, 0}, true, 0});
    }
    Assignment asg = match(msds, maps, cfg);
    ProximityGraph g = build_graph(maps, cfg);
    MetricsRecord rec;
    rec.t = 0.0;
    rec.coverage = msds.empty() ? 0.0 : coverage_fraction(asg, static_cast<int>(msds.size()));
    rec.fiedler = fiedler_value(laplacian(g), g.n);
    rec.info_penetration = info_penetration(g, cfg.tau);
    rec.alive_maps = g.n;
    return rec;
}

}  // namespace mapsim
