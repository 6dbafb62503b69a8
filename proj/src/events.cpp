#include "mapsim/events.hpp"

#include <cmath>

#include "mapsim/errors.hpp"

namespace mapsim {

void step_mobility(std::vector<MsdState>& msds, double s, Rng& rng) {
    if (!(s >= 0.0)) throw ConfigError("mobility: s must be >= 0");
    for (auto& m : msds) {
        double dx = s * rng.uniform(-1.0, 1.0);
        double dy = s * rng.uniform(-1.0, 1.0);
        m.position += Vec2{dx, dy};
    }
}

void apply_failure(std::vector<MapState>& maps, const FailureEvent& event, Rng& rng) {
    if (!(event.fraction >= 0.0 && event.fraction < 1.0))
        throw ConfigError("failure: fraction must lie in [0,1)");
    std::vector<std::size_t> alive;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        if (maps[k].alive) alive.push_back(k);
    }
    std::size_t kill = static_cast<std::size_t>(
        std::floor(event.fraction * static_cast<double>(alive.size())));
    for (std::size_t i = 0; i < kill; ++i) {
        std::size_t pick = i + rng.index(alive.size() - i);
        std::swap(alive[i], alive[pick]);
        MapState& m = maps[alive[i]];
        m.alive = false;
        m.load = 0;
        m.velocity = {0, 0};
    }
}

}  // namespace mapsim
