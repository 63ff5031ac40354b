#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>

#include "shiftres/errors.hpp"
#include "shiftres/reservoir.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

/// Shortest decimal form that round-trips to the same double. Keeps emitted
/// files byte-stable across runs and locales.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) {
        throw NumericError("failed to format a double");
    }
    return std::string(buf, res.ptr);
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    return out;
}

/// Write a series as CSV with header "t,x_1,...,x_d".
inline void export_time_series_csv(const TimeSeries& s, const std::string& path) {
    auto out = open_output(path);
    out << 't';
    for (Index c = 0; c < s.dimension(); ++c) {
        out << ",x_" << (c + 1);
    }
    out << '\n';
    for (Index k = 0; k < s.samples(); ++k) {
        out << format_double(s.time_at(k));
        for (Index c = 0; c < s.dimension(); ++c) {
            out << ',' << format_double(s.values(k, c));
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("failed while writing " + path);
    }
}

/// Write recorded reservoir states as CSV with header "t,r_1,...,r_N".
inline void export_reservoir_csv(const ReservoirTrajectory& traj,
                                 const std::string& path) {
    auto out = open_output(path);
    out << 't';
    for (Index c = 0; c < traj.config.n_nodes; ++c) {
        out << ",r_" << (c + 1);
    }
    out << '\n';
    for (Index k = 0; k < traj.samples(); ++k) {
        out << format_double(traj.time_at(k));
        for (Index c = 0; c < traj.config.n_nodes; ++c) {
            out << ',' << format_double(traj.states(k, c));
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("failed while writing " + path);
    }
}

} // namespace shiftres
