#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "shiftres/errors.hpp"

namespace shiftres {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Uniformly sampled multivariate signal. Sample k lives at time
/// t_start + k*dt, always computed from k (never by accumulating dt).
struct TimeSeries {
    double t_start = 0.0;
    double dt = 0.0;
    Matrix values; // samples x dimension

    Index samples() const { return values.rows(); }
    Index dimension() const { return values.cols(); }

    double time_at(Index k) const { return t_start + static_cast<double>(k) * dt; }
    double t_end() const { return time_at(samples() - 1); }

    /// Index of the sample at time t. The time must lie on the sample grid.
    Index index_of(double t) const {
        const auto k = static_cast<Index>(std::llround((t - t_start) / dt));
        if (k < 0 || k >= samples() ||
            std::abs(time_at(k) - t) > 1e-9 * std::max(1.0, std::abs(t))) {
            throw ConfigError("time " + std::to_string(t) +
                              " is not on the sample grid of this series");
        }
        return k;
    }

    bool covers(double t_a, double t_b) const {
        return samples() >= 1 && t_start <= t_a + 1e-12 && t_end() >= t_b - 1e-12;
    }

    /// Extract one component as a scalar series.
    TimeSeries component(Index c) const {
        if (c < 0 || c >= dimension()) {
            throw ConfigError("component index " + std::to_string(c) + " out of range");
        }
        TimeSeries out;
        out.t_start = t_start;
        out.dt = dt;
        out.values = values.col(c);
        return out;
    }
};

/// Scalar-series slice over [t_a, t_b] (inclusive, grid-aligned), with the
/// whole window displaced back in time by shift_steps samples.
inline Vector window_vector(const TimeSeries& s, double t_a, double t_b,
                            Index shift_steps = 0) {
    if (s.dimension() != 1) {
        throw ConfigError("window_vector requires a scalar series");
    }
    const Index a = s.index_of(t_a) - shift_steps;
    const Index b = s.index_of(t_b) - shift_steps;
    if (a < 0 || b >= s.samples()) {
        throw ConfigError("window exceeds series extent");
    }
    return s.values.col(0).segment(a, b - a + 1);
}

} // namespace shiftres
