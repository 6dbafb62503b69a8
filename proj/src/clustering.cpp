#include "mapsim/clustering.hpp"

#include <cmath>
#include <limits>

#include "mapsim/errors.hpp"

namespace mapsim {

namespace {

std::vector<Vec2> seed_centers(const std::vector<Vec2>& pts, int K, Rng& rng) {
    std::vector<Vec2> centers;
    centers.reserve(K);
    if (pts.empty()) {
        centers.assign(K, Vec2{0, 0});
        return centers;
    }
    centers.push_back(pts[rng.index(pts.size())]);
    std::vector<double> d2(pts.size());
    while (static_cast<int>(centers.size()) < K) {
        double total = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double best = std::numeric_limits<double>::max();
            for (const Vec2& c : centers) best = std::min(best, norm2(pts[i] - c));
            d2[i] = best;
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
            acc += d2[i];
            if (u < acc) { pick = i; break; }
        }
        centers.push_back(pts[pick]);
    }
    return centers;
}

}  // namespace

ClusterSet lloyd(const std::vector<Vec2>& points, int K,
                 const std::vector<Vec2>* init_centers, Rng& rng, int max_iters,
                 double tol, std::vector<double>* wcss_history) {
    if (K < 1) throw ConfigError("lloyd: K must be >= 1");
    ClusterSet cs;
    cs.centers = init_centers ? *init_centers : seed_centers(points, K, rng);
    if (static_cast<int>(cs.centers.size()) != K)
        throw ConfigError("lloyd: init_centers size must equal K");
    cs.membership.assign(points.size(), 0);
    if (points.empty()) return cs;

    std::vector<Vec2> sums(K);
    std::vector<int> counts(K);
    for (int iter = 0; iter < max_iters; ++iter) {
        double wcss = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::max();
            int bk = 0;
            for (int k = 0; k < K; ++k) {
                double dd = norm2(points[i] - cs.centers[k]);
                if (dd < best) { best = dd; bk = k; }
            }
            cs.membership[i] = bk;
            wcss += best;
        }
        if (wcss_history) wcss_history->push_back(wcss);

        sums.assign(K, Vec2{0, 0});
        counts.assign(K, 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            sums[cs.membership[i]] += points[i];
            counts[cs.membership[i]]++;
        }
        double moved = 0.0;
        for (int k = 0; k < K; ++k) {
            Vec2 next;
            if (counts[k] > 0) {
                next = (1.0 / counts[k]) * sums[k];
            } else {
                // re-seed a starved cluster at the point farthest from its center
                double far_d = -1.0;
                std::size_t far_i = 0;
                for (std::size_t i = 0; i < points.size(); ++i) {
                    double dd = norm2(points[i] - cs.centers[cs.membership[i]]);
                    if (dd > far_d) { far_d = dd; far_i = i; }
                }
                next = points[far_i];
            }
            moved = std::max(moved, norm(next - cs.centers[k]));
            cs.centers[k] = next;
        }
        if (moved < tol) break;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::max();
        int bk = 0;
        for (int k = 0; k < K; ++k) {
            double dd = norm2(points[i] - cs.centers[k]);
            if (dd < best) { best = dd; bk = k; }
        }
        cs.membership[i] = bk;
    }
    // final half-step so each returned center is exactly its members' mean
    sums.assign(K, Vec2{0, 0});
    counts.assign(K, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        sums[cs.membership[i]] += points[i];
        counts[cs.membership[i]]++;
    }
    for (int k = 0; k < K; ++k) {
        if (counts[k] > 0) cs.centers[k] = (1.0 / counts[k]) * sums[k];
    }
    return cs;
}

int nearest_center_index(Vec2 pos, const ClusterSet& clusters) {
    if (clusters.centers.empty()) throw SimError("nearest_center: no cluster centers");
    int best_k = 0;
    double best = std::numeric_limits<double>::max();
    for (std::size_t k = 0; k < clusters.centers.size(); ++k) {
        double dd = norm2(pos - clusters.centers[k]);
        if (dd < best) { best = dd; best_k = static_cast<int>(k); }
    }
    return best_k;
}

Vec2 nearest_center(Vec2 pos, const ClusterSet& clusters) {
    return clusters.centers[nearest_center_index(pos, clusters)];
}

}  // namespace mapsim
