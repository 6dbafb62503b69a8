#include "mapsim/kernels.hpp"

#include <cmath>

#include "mapsim/errors.hpp"

namespace mapsim {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

SigmoidParams SigmoidParams::make(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw ConfigError("sigmoid amplitudes must be positive");
    }
    return {a, b, std::fabs(a - b) / std::sqrt(4.0 * a * b)};
}

double bump(double z, CutoffParams p) {
    if (!(p.z1 >= 0.0) || !(p.z1 < p.z0)) {
        throw ConfigError("bump cutoffs require 0 <= z1 < z0");
    }
    if (z < 0.0) {
        throw ConfigError("bump argument must be non-negative");
    }
    if (z < p.z1) return 1.0;
    if (z < p.z0) return 0.5 * (1.0 + std::cos(kPi * (z - p.z1) / (p.z0 - p.z1)));
    return 0.0;
}

namespace {
void require_epsilon(SigmaNormParams p) {
    if (!(p.epsilon > 0.0)) throw ConfigError("sigma-norm epsilon must be positive");
}
}  // namespace

double sigma_norm(double x, SigmaNormParams p) {
    require_epsilon(p);
    return (std::sqrt(1.0 + p.epsilon * x * x) - 1.0) / p.epsilon;
}

double sigma_norm(Vec2 x, SigmaNormParams p) {
    require_epsilon(p);
    return (std::sqrt(1.0 + p.epsilon * norm2(x)) - 1.0) / p.epsilon;
}

Vec2 sigma_gradient(Vec2 x, SigmaNormParams p) {
    require_epsilon(p);
    double denom = std::sqrt(1.0 + p.epsilon * norm2(x));
    return {x.x / denom, x.y / denom};
}

double uneven_sigmoid(double z, SigmoidParams p) {
    double zc = z + p.c;
    return 0.5 * ((p.a + p.b) * zc / std::sqrt(1.0 + zc * zc) + (p.a - p.b));
}

double psi(double z, double range_sigma, double d_sigma, double gamma,
           SigmoidParams sigmoid) {
    return bump(z / range_sigma, {gamma, 1.0}) * uneven_sigmoid(z - d_sigma, sigmoid);
}

}  // namespace mapsim
