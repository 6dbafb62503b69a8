#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mapsim/errors.hpp"
#include "mapsim/kernels.hpp"
#include "mapsim/rng.hpp"

using namespace mapsim;

TEST_CASE("bump piecewise values") {
    CutoffParams cp{0.2, 1.0};
    CHECK(bump(0.1, cp) == 1.0);
    CHECK(bump(1.5, cp) == 0.0);
    CHECK(bump(0.6, cp) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bump(0.0, cp) == 1.0);
    CHECK(bump(1.0, cp) == 0.0);
}

TEST_CASE("bump rejects bad inputs") {
    CHECK_THROWS_AS(bump(-0.01, {0.2, 1.0}), ConfigError);
    CHECK_THROWS_AS(bump(0.5, {1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(bump(0.5, {1.0, 0.2}), ConfigError);
    CHECK_THROWS_AS(bump(0.5, {-0.1, 1.0}), ConfigError);
}

TEST_CASE("bump continuity at the cutoffs") {
    CutoffParams cp{0.2, 1.0};
    double d = 1e-9;
    CHECK(std::fabs(bump(0.2 - d, cp) - bump(0.2, cp)) < 1e-8);
    CHECK(std::fabs(bump(0.2 + d, cp) - bump(0.2, cp)) < 1e-8);
    CHECK(std::fabs(bump(1.0 - d, cp) - bump(1.0, cp)) < 1e-8);
}

TEST_CASE("bump range and monotonicity on a grid") {
    CutoffParams cp{0.3, 0.9};
    double prev = 1.0;
    for (int i = 0; i <= 2000; ++i) {
        double z = 1.5 * i / 2000.0;
        double v = bump(z, cp);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("sigma_norm values") {
    SigmaNormParams sp{0.1};
    CHECK(sigma_norm(Vec2{0, 0}, sp) == 0.0);
    CHECK(sigma_norm(Vec2{1, 0}, sp) == doctest::Approx(0.48808848170151546991).epsilon(1e-15));
    CHECK(sigma_norm(24.0, sp) == doctest::Approx(66.550636836018549219).epsilon(1e-15));
    CHECK(sigma_norm(20.0, sp) == doctest::Approx(54.031242374328486865).epsilon(1e-15));
    CHECK(sigma_norm(12.0, sp) == doctest::Approx(29.242833740697166937).epsilon(1e-15));
}

TEST_CASE("sigma_norm positivity and rotation invariance") {
    SigmaNormParams sp{0.1};
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Vec2 x{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        double v = sigma_norm(x, sp);
        CHECK(v >= 0.0);
        if (x.x != 0.0 || x.y != 0.0) CHECK(v > 0.0);
        double th = rng.uniform(0, 6.283185307179586);
        Vec2 rx{x.x * std::cos(th) - x.y * std::sin(th), x.x * std::sin(th) + x.y * std::cos(th)};
        CHECK(sigma_norm(rx, sp) == doctest::Approx(v).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sigma_norm(1.0, {0.0}), ConfigError);
    CHECK_THROWS_AS(sigma_norm(1.0, {-0.1}), ConfigError);
}

TEST_CASE("sigma_gradient values") {
    SigmaNormParams sp{0.1};
    Vec2 g0 = sigma_gradient({0, 0}, sp);
    CHECK(g0.x == 0.0);
    CHECK(g0.y == 0.0);
    Vec2 g = sigma_gradient({3, 4}, sp);
    CHECK(g.x == doctest::Approx(1.6035674514745463081).epsilon(1e-15));
    CHECK(g.y == doctest::Approx(2.1380899352993950775).epsilon(1e-15));
    Vec2 h = sigma_gradient({-1, 0}, sp);
    CHECK(h.x == doctest::Approx(-0.95346258924559231545).epsilon(1e-15));
    CHECK(h.y == 0.0);
}

TEST_CASE("sigma_gradient matches central finite differences") {
    SigmaNormParams sp{0.1};
    Rng rng(7);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Vec2 x{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        Vec2 g = sigma_gradient(x, sp);
        double fx = (sigma_norm(Vec2{x.x + h, x.y}, sp) - sigma_norm(Vec2{x.x - h, x.y}, sp)) /
                    (2 * h);
        double fy = (sigma_norm(Vec2{x.x, x.y + h}, sp) - sigma_norm(Vec2{x.x, x.y - h}, sp)) /
                    (2 * h);
        worst = std::max({worst, std::fabs(g.x - fx), std::fabs(g.y - fy)});
        CHECK(norm(g) < 1.0 / std::sqrt(sp.epsilon));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("uneven_sigmoid values and parameter derivation") {
    SigmoidParams even = SigmoidParams::make(5, 5);
    CHECK(even.c == 0.0);
    CHECK(uneven_sigmoid(0.0, even) == 0.0);
    CHECK(uneven_sigmoid(100.0, even) > 4.99);
    CHECK(uneven_sigmoid(1.0, even) == doctest::Approx(3.535533905932737622).epsilon(1e-15));

    SigmoidParams uneven = SigmoidParams::make(2, 8);
    CHECK(uneven.c == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(uneven_sigmoid(1.0, uneven) == doctest::Approx(1.3412157106222959667).epsilon(1e-14));

    CHECK_THROWS_AS(SigmoidParams::make(0, 5), ConfigError);
    CHECK_THROWS_AS(SigmoidParams::make(5, -1), ConfigError);
}

TEST_CASE("uneven_sigmoid increasing and bounded") {
    SigmoidParams p = SigmoidParams::make(3, 7);
    double prev = -1e300;
    for (int i = 0; i <= 4000; ++i) {
        double z = -200 + 0.1 * i;
        double v = uneven_sigmoid(z, p);
        CHECK(v > prev);
        CHECK(v > -7.0);
        CHECK(v < 3.0);
        prev = v;
    }
    // odd symmetry in the balanced case
    SigmoidParams even = SigmoidParams::make(5, 5);
    for (double z : {0.3, 1.7, 9.0}) {
        CHECK(uneven_sigmoid(-z, even) == doctest::Approx(-uneven_sigmoid(z, even)).epsilon(1e-15));
    }
}

TEST_CASE("psi zeros, sign, and a frozen sample") {
    SigmaNormParams sp{0.1};
    SigmoidParams sg = SigmoidParams::make(5, 5);
    double range_sigma = sigma_norm(24.0, sp);
    double d_sigma = sigma_norm(20.0, sp);
    double gamma = 0.2;

    CHECK(psi(d_sigma, range_sigma, d_sigma, gamma, sg) == 0.0);
    CHECK(psi(1.2 * range_sigma, range_sigma, d_sigma, gamma, sg) == 0.0);
    CHECK(psi(range_sigma, range_sigma, d_sigma, gamma, sg) == 0.0);
    CHECK(psi(0.5 * d_sigma, range_sigma, d_sigma, gamma, sg) < 0.0);
    CHECK(psi(sigma_norm(22.0, sp), range_sigma, d_sigma, gamma, sg) ==
          doctest::Approx(0.16680247761231474216).epsilon(1e-13));

    for (int i = 0; i < 500; ++i) {
        double z = d_sigma * i / 500.0;
        CHECK(psi(z, range_sigma, d_sigma, gamma, sg) <= 0.0);
    }
    for (int i = 0; i <= 100; ++i) {
        double z = range_sigma * (1.0 + i * 0.01);
        CHECK(psi(z, range_sigma, d_sigma, gamma, sg) == 0.0);
    }
}
