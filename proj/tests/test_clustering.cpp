#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mapsim/clustering.hpp"
#include "mapsim/domain.hpp"
#include "mapsim/errors.hpp"

using namespace mapsim;

TEST_CASE("k=1 gives the centroid") {
    std::vector<Vec2> pts{{0, 0}, {2, 0}, {4, 6}, {-2, 2}};
    Rng rng(1);
    ClusterSet cs = lloyd(pts, 1, nullptr, rng);
    REQUIRE(cs.centers.size() == 1);
    CHECK(cs.centers[0].x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cs.centers[0].y == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cs.membership == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("two separated pairs split at their midpoints") {
    std::vector<Vec2> pts{{0, 0}, {0, 2}, {100, 0}, {100, 2}};
    Rng rng(2);
    ClusterSet cs = lloyd(pts, 2, nullptr, rng);
    REQUIRE(cs.centers.size() == 2);
    std::vector<Vec2> sorted = cs.centers;
    std::sort(sorted.begin(), sorted.end(), [](Vec2 a, Vec2 b) { return a.x < b.x; });
    CHECK(sorted[0].x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sorted[0].y == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sorted[1].x == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(sorted[1].y == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reference GMM sample resolves the three modes") {
    ScenarioConfig cfg = default_config();
    Rng prng = derive_stream(4, "placement");
    SimulationState st = sample_initial_state(cfg, prng);
    std::vector<Vec2> pts;
    for (const auto& m : st.msds) pts.push_back(m.position);
    Rng crng = derive_stream(4, "clustering");
    ClusterSet cs = lloyd(pts, 3, nullptr, crng);
    REQUIRE(cs.centers.size() == 3);
    std::vector<Vec2> modes{{50, 20}, {0, -50}, {-40, 40}};
    std::vector<bool> used(3, false);
    for (Vec2 c : cs.centers) {
        double best = 1e300;
        int best_m = -1;
        for (int m = 0; m < 3; ++m) {
            double dist = norm(c - modes[m]);
            if (dist < best) {
                best = dist;
                best_m = m;
            }
        }
        CHECK(best < 5.0);
        CHECK_FALSE(used[best_m]);
        used[best_m] = true;
    }
}

TEST_CASE("objective never increases across iterations") {
    Rng rng(9);
    std::vector<Vec2> pts;
    for (int i = 0; i < 400; ++i) pts.push_back({rng.uniform(-60, 60), rng.uniform(-60, 60)});
    std::vector<double> wcss;
    ClusterSet cs = lloyd(pts, 5, nullptr, rng, 100, 1e-3, &wcss);
    REQUIRE(wcss.size() >= 2);
    for (std::size_t i = 1; i < wcss.size(); ++i) CHECK(wcss[i] <= wcss[i - 1] + 1e-9);
    REQUIRE(cs.centers.size() == 5);
}

TEST_CASE("converged centers are a fixed point") {
    Rng rng(10);
    std::vector<Vec2> pts;
    for (int i = 0; i < 300; ++i) pts.push_back({rng.uniform(-60, 60), rng.uniform(-60, 60)});
    ClusterSet first = lloyd(pts, 4, nullptr, rng);
    ClusterSet again = lloyd(pts, 4, &first.centers, rng);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(norm(again.centers[k] - first.centers[k]) < 1e-3);
    }
}

TEST_CASE("converged centers are member means") {
    Rng rng(15);
    std::vector<Vec2> pts;
    for (int i = 0; i < 200; ++i) pts.push_back({rng.uniform(-60, 60), rng.uniform(-60, 60)});
    ClusterSet cs = lloyd(pts, 3, nullptr, rng);
    for (int k = 0; k < 3; ++k) {
        Vec2 sum{0, 0};
        int n = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (cs.membership[i] == k) {
                sum += pts[i];
                n++;
            }
        }
        REQUIRE(n > 0);
        CHECK(norm(sum * (1.0 / n) - cs.centers[k]) < 1e-9);
    }
}

TEST_CASE("deterministic for a fixed stream") {
    std::vector<Vec2> pts;
    Rng setup(20);
    for (int i = 0; i < 150; ++i) pts.push_back({setup.uniform(-5, 5), setup.uniform(-5, 5)});
    Rng r1(777), r2(777);
    ClusterSet a = lloyd(pts, 4, nullptr, r1);
    ClusterSet b = lloyd(pts, 4, nullptr, r2);
    for (int k = 0; k < 4; ++k) {
        CHECK(a.centers[k].x == b.centers[k].x);
        CHECK(a.centers[k].y == b.centers[k].y);
    }
    CHECK(a.membership == b.membership);
}

TEST_CASE("more clusters than distinct points still yields K centers") {
    std::vector<Vec2> pts{{1, 1}, {1, 1}, {2, 2}};
    Rng rng(30);
    ClusterSet cs = lloyd(pts, 5, nullptr, rng);
    REQUIRE(cs.centers.size() == 5);
    for (Vec2 c : cs.centers) {
        CHECK(std::isfinite(c.x));
        CHECK(std::isfinite(c.y));
    }
    for (int m : cs.membership) {
        CHECK(m >= 0);
        CHECK(m < 5);
    }
}

TEST_CASE("invalid arguments are rejected, empty input is not") {
    std::vector<Vec2> pts{{0, 0}};
    Rng rng(1);
    CHECK_THROWS_AS(lloyd(pts, 0, nullptr, rng), ConfigError);
    std::vector<Vec2> bad_init{{0, 0}};
    CHECK_THROWS_AS(lloyd(pts, 2, &bad_init, rng), ConfigError);
    ClusterSet empty_pts = lloyd({}, 2, nullptr, rng);
    CHECK(empty_pts.centers.size() == 2);
    CHECK(empty_pts.membership.empty());
}

TEST_CASE("nearest center lookup") {
    ClusterSet cs;
    cs.centers = {{1, 0}, {0, 2}};
    CHECK(nearest_center({0, 0}, cs) == Vec2{1, 0});
    CHECK(nearest_center_index({0, 0}, cs) == 0);
    CHECK(nearest_center({1, 0}, cs) == Vec2{1, 0});
    CHECK(nearest_center({0, 10}, cs) == Vec2{0, 2});

    ClusterSet single;
    single.centers = {{5, 5}};
    CHECK(nearest_center({-3, 9}, single) == Vec2{5, 5});

    ClusterSet tie;
    tie.centers = {{1, 0}, {-1, 0}};
    CHECK(nearest_center_index({0, 0}, tie) == 0);

    ClusterSet empty;
    CHECK_THROWS_AS(nearest_center({0, 0}, empty), SimError);
    CHECK_THROWS_AS(nearest_center_index({0, 0}, empty), SimError);
}
