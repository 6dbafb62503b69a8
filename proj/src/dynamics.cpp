#include "mapsim/dynamics.hpp"

#include <cmath>
#include <string>

#include "mapsim/errors.hpp"

namespace mapsim {

void step_dynamics(std::vector<MapState>& maps, const ControlInput& u, Discretization disc) {
    if (!(disc.Ts > 0.0)) throw ConfigError("dynamics: Ts must be positive");
    if (u.u.size() != maps.size()) throw SimError("dynamics: control input size mismatch");
    const double Ts = disc.Ts;
    const double half = 0.5 * Ts * Ts;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        MapState& m = maps[k];
        if (!m.alive) continue;
        Vec2 a = u.u[k];
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            throw SimError("dynamics: non-finite input for MAP " + std::to_string(m.id));
        if (disc.scheme == Scheme::ExactHold) {
            m.position += Ts * m.velocity + half * a;
            m.velocity += Ts * a;
        } else {
            m.position += Ts * m.velocity;
            m.velocity += Ts * a;
        }
    }
}

}  // namespace mapsim
