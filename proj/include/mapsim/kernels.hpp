#pragma once

#include "mapsim/vec2.hpp"

namespace mapsim {

// Cutoff window for the bump function: full strength below z1, smooth cosine
// decay on [z1, z0), zero beyond z0.
struct CutoffParams {
    double z1;
    double z0;
};

struct SigmaNormParams {
    double epsilon;
};

// Uneven sigmoid amplitudes; the shift c is derived, never set directly.
struct SigmoidParams {
    double a;
    double b;
    double c;
    static SigmoidParams make(double a, double b);
};

double bump(double z, CutoffParams p);
double sigma_norm(double x, SigmaNormParams p);
double sigma_norm(Vec2 x, SigmaNormParams p);
Vec2 sigma_gradient(Vec2 x, SigmaNormParams p);
double uneven_sigmoid(double z, SigmoidParams p);

// Pairwise interaction strength over sigma-normed distance z: repulsive below
// the separation target d_sigma, attractive up to the range cutoff, zero beyond.
double psi(double z, double range_sigma, double d_sigma, double gamma,
           SigmoidParams sigmoid);

}  // namespace mapsim
