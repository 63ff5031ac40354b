#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "shiftres/errors.hpp"
#include "shiftres/rng.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

/// Random symmetric adjacency: off-diagonal entries i.i.d. Uniform[0,1]
/// (upper triangle drawn row-major, mirrored below), every diagonal entry set
/// to beta = -(max off-diagonal row sum) - 0.1. By Gershgorin every eigenvalue
/// is then at most -0.1; the construction still verifies the largest
/// eigenvalue numerically.
inline std::pair<Matrix, double> build_adjacency(Index n, std::uint64_t seed) {
    if (n < 2) {
        throw ConfigError("adjacency needs at least 2 nodes");
    }
    std::mt19937_64 gen(seed);
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double v = u01(gen);
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    double max_row_sum = 0.0;
    for (Index i = 0; i < n; ++i) {
        a(i, i) = 0.0;
        max_row_sum = std::max(max_row_sum, a.row(i).sum());
    }
    const double beta = -max_row_sum - 0.1;
    a.diagonal().setConstant(beta);

    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || es.eigenvalues().maxCoeff() >= 0.0) {
        throw NumericError("adjacency construction failed the eigenvalue check");
    }
    return {std::move(a), beta};
}

/// Fixed parameters of one reservoir: dr/dt = gamma * (-r + tanh(epsilon*A*r + s(t)*w)).
struct ReservoirConfig {
    Index n_nodes = 100;
    Matrix adjacency;     // symmetric, diagonal = beta
    double beta = 0.0;    // negative
    double epsilon = 1.0; // spectral scale, >= 0
    double gamma = 1.0;   // rate, > 0 (1/time units)
    Vector input_weights; // all ones
    double dt = 0.01;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_nodes < 2 || adjacency.rows() != n_nodes || adjacency.cols() != n_nodes) {
            throw ConfigError("reservoir adjacency has wrong shape");
        }
        if (!(gamma > 0.0) || epsilon < 0.0 || !(dt > 0.0) || !(beta < 0.0)) {
            throw ConfigError("reservoir parameters out of range");
        }
        if (input_weights.size() != n_nodes) {
            throw ConfigError("input weight vector has wrong length");
        }
    }
};

inline ReservoirConfig make_reservoir_config(Index n_nodes, std::uint64_t seed,
                                             double epsilon, double gamma, double dt) {
    ReservoirConfig cfg;
    cfg.n_nodes = n_nodes;
    auto [a, beta] = build_adjacency(n_nodes, seed);
    cfg.adjacency = std::move(a);
    cfg.beta = beta;
    cfg.epsilon = epsilon;
    cfg.gamma = gamma;
    cfg.input_weights = Vector::Ones(n_nodes);
    cfg.dt = dt;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

/// Node states and exact node derivatives recorded over [record_start,
/// record_end]. Row k of both matrices belongs to time record_start + k*dt;
/// each derivative row is the reservoir RHS evaluated at the recorded state
/// and input sample.
struct ReservoirTrajectory {
    ReservoirConfig config;
    double record_start = 0.0;
    double dt = 0.0;
    Matrix states;      // samples x N
    Matrix derivatives; // samples x N

    Index samples() const { return states.rows(); }
    double time_at(Index k) const { return record_start + static_cast<double>(k) * dt; }
    double record_end() const { return time_at(samples() - 1); }

    Index index_of(double t) const {
        const auto k = static_cast<Index>(std::llround((t - record_start) / dt));
        if (k < 0 || k >= samples() ||
            std::abs(time_at(k) - t) > 1e-9 * std::max(1.0, std::abs(t))) {
            throw ConfigError("time " + std::to_string(t) +
                              " is not on the recorded trajectory grid");
        }
        return k;
    }
};

/// Integrate the driven reservoir from r(0) = 0 and record states and
/// derivatives over [record_start, record_end].
///
/// The input must share the reservoir step and cover [0, record_end]. Inside
/// each RK4 step the input is linearly interpolated: the half-step stages use
/// the midpoint of the two bracketing samples.
inline ReservoirTrajectory drive(const ReservoirConfig& config, const TimeSeries& input,
                                 double record_start, double record_end) {
    config.validate();
    if (input.dimension() != 1) {
        throw ConfigError("reservoir input must be a scalar series");
    }
    if (std::abs(input.dt - config.dt) > 1e-12) {
        throw ConfigError("input sampling step must equal the reservoir step");
    }
    if (record_start < 0.0 || record_end < record_start) {
        throw ConfigError("invalid recording window");
    }
    if (!input.covers(0.0, record_end)) {
        throw ConfigError("input does not cover the recording window");
    }

    const double dt = config.dt;
    const Index n = config.n_nodes;
    const Index k_start = input.index_of(record_start);
    const Index k_end = input.index_of(record_end);
    const auto& s = input.values;
    const Index s0 = input.index_of(0.0);

    ReservoirTrajectory traj;
    traj.config = config;
    traj.record_start = record_start;
    traj.dt = dt;
    traj.states.resize(k_end - k_start + 1, n);
    traj.derivatives.resize(k_end - k_start + 1, n);

    Vector r = Vector::Zero(n);
    Vector arg(n), k1(n), k2(n), k3(n), k4(n), tmp(n);

    // RHS of the reservoir equation at state x with input value sv.
    const auto rhs = [&](const Vector& x, double sv, Vector& out) {
        arg.noalias() = config.adjacency * x;
        arg *= config.epsilon;
        arg.noalias() += sv * config.input_weights;
        out = config.gamma * (arg.array().tanh() - x.array()).matrix();
    };

    const auto record = [&](Index k) {
        if (k >= k_start && k <= k_end) {
            traj.states.row(k - k_start) = r;
            Vector d(n);
            rhs(r, s(s0 + k, 0), d);
            traj.derivatives.row(k - k_start) = d;
        }
    };

    record(0);
    for (Index k = 0; k < k_end; ++k) {
        const double sa = s(s0 + k, 0);
        const double sb = s(s0 + k + 1, 0);
        const double sm = 0.5 * (sa + sb);
        rhs(r, sa, k1);
        tmp = r + (0.5 * dt) * k1;
        rhs(tmp, sm, k2);
        tmp = r + (0.5 * dt) * k2;
        rhs(tmp, sm, k3);
        tmp = r + dt * k3;
        rhs(tmp, sb, k4);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!r.allFinite()) {
            throw DivergenceError(
                "reservoir diverged at step " + std::to_string(k + 1) +
                    " (gamma = " + std::to_string(config.gamma) +
                    ", epsilon = " + std::to_string(config.epsilon) + ")",
                static_cast<long>(k + 1));
        }
        record(k + 1);
    }
    return traj;
}

} // namespace shiftres
