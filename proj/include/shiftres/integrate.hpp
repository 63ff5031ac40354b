#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "shiftres/errors.hpp"
#include "shiftres/rng.hpp"
#include "shiftres/systems.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

/// One classical 4th-order Runge-Kutta step of an autonomous system.
template <typename Rhs>
Vector rk4_step(Rhs&& f, const Vector& x, double dt) {
    const Vector k1 = f(x);
    const Vector k2 = f(x + (0.5 * dt) * k1);
    const Vector k3 = f(x + (0.5 * dt) * k2);
    const Vector k4 = f(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step RK4 trajectory of an autonomous RHS over [0, t_end], one sample
/// per step, sample 0 holding the initial state. t_end is rounded to the
/// nearest whole number of steps.
template <typename Rhs>
TimeSeries integrate_autonomous(Rhs&& f, const Vector& x0, double dt, double t_end) {
    if (dt <= 0.0 || t_end <= 0.0) {
        throw ConfigError("integrate requires dt > 0 and t_end > 0");
    }
    const auto steps = static_cast<Index>(std::llround(t_end / dt));
    TimeSeries out;
    out.t_start = 0.0;
    out.dt = dt;
    out.values.resize(steps + 1, x0.size());
    Vector x = x0;
    out.values.row(0) = x;
    for (Index k = 0; k < steps; ++k) {
        x = rk4_step(f, x, dt);
        if (!x.allFinite()) {
            throw DivergenceError("integration diverged at step " + std::to_string(k + 1) +
                                      " (t = " + std::to_string(out.time_at(k + 1)) + ")",
                                  static_cast<long>(k + 1));
        }
        out.values.row(k + 1) = x;
    }
    return out;
}

/// RK4 trajectory of a chaotic benchmark system.
inline TimeSeries integrate(const ChaoticSystem& sys, const Vector& initial_state,
                            double dt, double t_end) {
    if (initial_state.size() != sys.dimension()) {
        throw ConfigError("initial state dimension does not match system");
    }
    return integrate_autonomous([&sys](const Vector& x) { return system_rhs(sys, x); },
                                initial_state, dt, t_end);
}

/// Componentwise Uniform[-1, 1] initial condition from a seeded generator.
inline Vector random_initial_state(Index dimension, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Vector x(dimension);
    for (Index i = 0; i < dimension; ++i) {
        x[i] = 2.0 * u01(gen) - 1.0;
    }
    return x;
}

} // namespace shiftres
