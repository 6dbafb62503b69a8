#pragma once

#include <vector>

#include "mapsim/controller.hpp"
#include "mapsim/domain.hpp"

namespace mapsim {

struct Discretization {
    double Ts;
    Scheme scheme = Scheme::ExactHold;
};

// Double-integrator step. Exact-hold advances position with the half-step
// acceleration term and reproduces the continuous closed form at sample
// instants; forward-difference is the plain Euler variant kept for cross-checks.
void step_dynamics(std::vector<MapState>& maps, const ControlInput& u, Discretization disc);

}  // namespace mapsim
