#pragma once

#include <cstdint>
#include <string>

#include "shiftres/errors.hpp"
#include "shiftres/integrate.hpp"
#include "shiftres/systems.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

/// A signal-reconstruction task: drive the reservoir with one component of a
/// chaotic system and fit another component. Phases: transient [0, t1],
/// training [t1, t2], testing [t2, t3].
struct TaskDefinition {
    std::string name;
    ChaoticSystem system;
    Index input_component = 0;
    Index target_component = 1;
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double tau_bar = 0.0; // characteristic timescale of the input signal

    void validate() const {
        if (!(0.0 < t1 && t1 < t2 && t2 < t3)) {
            throw ConfigError("task phase boundaries must satisfy 0 < t1 < t2 < t3");
        }
        if (tau_bar <= 0.0) {
            throw ConfigError("task tau_bar must be positive");
        }
        if (input_component < 0 || input_component >= system.dimension() ||
            target_component < 0 || target_component >= system.dimension()) {
            throw ConfigError("task component index out of range");
        }
    }
};

/// Lorenz96 task: input x1, target x4, phases 1000/1100/1200, tau_bar 0.19.
inline TaskDefinition lorenz96_task() {
    return {"lorenz96", ChaoticSystem::lorenz96(), 0, 3, 1000.0, 1100.0, 1200.0, 0.19};
}

/// Lorenz task: input x, target y, phases 600/610/615, tau_bar 0.3.
inline TaskDefinition lorenz_task() {
    return {"lorenz", ChaoticSystem::lorenz(), 0, 1, 600.0, 610.0, 615.0, 0.3};
}

/// Hindmarsh-Rose task: input x, target y, phases 1000/1010/1015, tau_bar 0.46.
inline TaskDefinition hindmarsh_rose_task() {
    return {"hr", ChaoticSystem::hindmarsh_rose(), 0, 1, 1000.0, 1010.0, 1015.0, 0.46};
}

/// A realized task: the definition plus its integrated input/target signals.
struct TaskData {
    TaskDefinition def;
    TimeSeries input;  // scalar, covers [0, t_end]
    TimeSeries target; // scalar, same grid
};

/// Integrate the task system from a seeded random initial condition and
/// extract the input/target components. t_end must reach at least t3.
inline TaskData realize_task(const TaskDefinition& def, double dt, double t_end,
                             std::uint64_t ic_seed) {
    def.validate();
    if (t_end < def.t3) {
        throw ConfigError("task realization must cover the testing phase");
    }
    const Vector x0 = random_initial_state(def.system.dimension(), ic_seed);
    const TimeSeries full = integrate(def.system, x0, dt, t_end);
    return {def, full.component(def.input_component), full.component(def.target_component)};
}

} // namespace shiftres
