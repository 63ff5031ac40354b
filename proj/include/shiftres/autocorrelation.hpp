#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "shiftres/errors.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

/// Characteristic timescale of a scalar signal: the smallest lag at which the
/// mean-removed, biased autocorrelation first drops to half of its lag-zero
/// value, linearly interpolated between the bracketing lags.
///
/// max_lag limits the search (in samples); by default every available lag is
/// considered. If the autocorrelation never reaches the half value within the
/// searched range, the timescale is undefined.
inline double autocorrelation_timescale(const TimeSeries& signal, Index max_lag = -1) {
    if (signal.dimension() != 1) {
        throw ConfigError("autocorrelation_timescale requires a scalar series");
    }
    const Index n = signal.samples();
    if (n < 2) {
        throw ConfigError("autocorrelation_timescale requires at least 2 samples");
    }
    const Vector x = signal.values.col(0).array() - signal.values.col(0).mean();
    const double c0 = x.squaredNorm() / static_cast<double>(n);
    if (c0 <= 0.0) {
        throw NumericError("autocorrelation_timescale requires nonzero variance");
    }
    if (max_lag < 0 || max_lag > n - 1) {
        max_lag = n - 1;
    }
    double rho_prev = 1.0;
    for (Index k = 1; k <= max_lag; ++k) {
        const double ck = x.head(n - k).dot(x.tail(n - k)) / static_cast<double>(n);
        const double rho = ck / c0;
        if (rho <= 0.5) {
            // Interpolate the half-crossing between lags k-1 and k.
            const double frac = (rho_prev - 0.5) / (rho_prev - rho);
            return (static_cast<double>(k - 1) + frac) * signal.dt;
        }
        rho_prev = rho;
    }
    throw NumericError("autocorrelation does not decay to half value within " +
                       std::to_string(max_lag) + " lags");
}

} // namespace shiftres
