#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "shiftres/errors.hpp"
#include "shiftres/reservoir.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

enum class ShiftMode { None, Random, Optimized };

inline const char* to_string(ShiftMode m) {
    switch (m) {
    case ShiftMode::None: return "none";
    case ShiftMode::Random: return "random";
    case ShiftMode::Optimized: return "optimized";
    }
    return "?";
}

/// Regressor matrix for one fitting window. Column layout:
///   [ shifted node states | (optional) unshifted node derivatives | ones ].
struct ReadoutMatrix {
    Matrix values;
    double window_start = 0.0;
    double window_end = 0.0;
    std::vector<double> shifts;
    bool has_derivatives = false;
    Index n_nodes = 0;

    Index rows() const { return values.rows(); }
};

/// Continuous shift tau displaces a node's readout to r(t - tau); on the grid
/// that is a whole-step displacement of round(tau/dt) samples.
inline Index shift_steps(double tau, double dt) {
    return static_cast<Index>(std::floor(tau / dt + 0.5));
}

/// Assemble the regressor matrix over [t_a, t_b] (inclusive, grid-aligned).
/// shifts[i] delays node i's column by shift_steps(shifts[i], dt) samples; a
/// negative shift advances it. Every displaced sample must stay on the
/// recorded trajectory. With include_derivatives the unshifted derivative
/// columns are appended before the bias column.
inline ReadoutMatrix build_matrix(const ReservoirTrajectory& traj, double t_a, double t_b,
                                  const std::vector<double>& shifts,
                                  bool include_derivatives = false) {
    const Index n = traj.config.n_nodes;
    if (static_cast<Index>(shifts.size()) != n) {
        throw ConfigError("shift vector length does not match the node count");
    }
    if (t_b <= t_a) {
        throw ConfigError("empty fitting window");
    }
    const Index a = traj.index_of(t_a);
    const Index b = traj.index_of(t_b);
    const Index rows = b - a + 1;
    const Index cols = (include_derivatives ? 2 * n : n) + 1;
    if (rows <= cols) {
        throw ConfigError("fitting window holds " + std::to_string(rows) +
                          " samples, need more than " + std::to_string(cols) +
                          " regressor columns");
    }

    ReadoutMatrix m;
    m.window_start = t_a;
    m.window_end = t_b;
    m.shifts = shifts;
    m.has_derivatives = include_derivatives;
    m.n_nodes = n;
    m.values.resize(rows, cols);

    for (Index i = 0; i < n; ++i) {
        const Index d = shift_steps(shifts[i], traj.dt);
        const Index lo = a - d;
        const Index hi = b - d;
        if (lo < 0 || hi >= traj.samples()) {
            throw BufferError("shift " + std::to_string(shifts[i]) + " on node " +
                              std::to_string(i) +
                              " reaches outside the recorded trajectory");
        }
        m.values.col(i) = traj.states.col(i).segment(lo, rows);
    }
    if (include_derivatives) {
        m.values.block(0, n, rows, n) = traj.derivatives.block(a, 0, rows, n);
    }
    m.values.col(cols - 1).setOnes();
    return m;
}

/// Ridge solution of min ||M k - g||^2 + eta ||k||^2 via the normal equations.
/// The Gram matrix is symmetric positive definite for eta > 0, so a Cholesky
/// factorization suffices.
inline Vector ridge_solve(const Matrix& m, const Vector& g, double eta) {
    if (m.rows() != g.size()) {
        throw ConfigError("regressor and target lengths differ");
    }
    if (!(eta > 0.0)) {
        throw ConfigError("ridge parameter must be positive");
    }
    Matrix gram = Matrix::Zero(m.cols(), m.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(m.transpose());
    gram.diagonal().array() += eta;
    Eigen::LLT<Matrix> llt(gram.selfadjointView<Eigen::Lower>());
    if (llt.info() != Eigen::Success) {
        throw NumericError("ridge normal equations are not positive definite");
    }
    return llt.solve(m.transpose() * g);
}

/// Normalized error: std of the residual over std of the target, both taken
/// around their own means. Invariant under shifting g and h by a common
/// constant offset.
inline double nrmse(const Vector& h, const Vector& g) {
    if (h.size() != g.size() || h.size() == 0) {
        throw ConfigError("prediction and target lengths differ");
    }
    const auto n = static_cast<double>(g.size());
    const Vector resid = h - g;
    const double rm = resid.mean();
    const double gm = g.mean();
    const double rv = (resid.array() - rm).square().sum() / n;
    const double gv = (g.array() - gm).square().sum() / n;
    if (!(gv > 0.0)) {
        throw NumericError("target signal has zero variance");
    }
    return std::sqrt(rv / gv);
}

/// Fitted readout. kappa matches the column layout of the matrix it was
/// fitted on (bias last). lambda and kappa_joint are only present on models
/// produced by the joint state/derivative fit.
struct ReadoutModel {
    Vector kappa;
    double eta = 0.0;
    std::vector<double> shifts;
    std::optional<Vector> lambda;
    std::optional<Vector> kappa_joint;

    Vector predict(const ReadoutMatrix& m) const {
        if (m.values.cols() != kappa.size()) {
            throw ConfigError("readout weight length does not match the matrix");
        }
        return m.values * kappa;
    }
};

inline ReadoutModel ridge_fit(const ReadoutMatrix& m, const Vector& g, double eta) {
    ReadoutModel model;
    model.kappa = ridge_solve(m.values, g, eta);
    model.eta = eta;
    model.shifts = m.shifts;
    return model;
}

/// Training and testing errors of one fitted readout, with the knobs that
/// produced it.
struct ErrorReport {
    double delta_tr = 0.0;
    double delta_ts = 0.0;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    ShiftMode mode = ShiftMode::None;
    Index clamp_count = 0;
    Index degenerate_count = 0;
};

struct MemoryCapacity {
    double total = 0.0;
    std::vector<double> per_tau; // per_tau[k] belongs to delay k+1 steps
};

/// Linear memory capacity of the recorded reservoir over [t_a, t_b]: for each
/// delay tau = 1..tau_max_steps, ridge-fit the reservoir to reproduce the
/// input tau steps back and score the fit by the squared correlation between
/// reconstruction and delayed input. Each term lies in [0, 1]; the capacity is
/// their sum. The Gram matrix is factored once and reused across delays.
inline MemoryCapacity memory_capacity(const ReservoirTrajectory& traj,
                                      const TimeSeries& input, double t_a, double t_b,
                                      Index tau_max_steps, double eta) {
    const Index n = traj.config.n_nodes;
    const std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
    const ReadoutMatrix m = build_matrix(traj, t_a, t_b, zero, false);
    const Index rows = m.rows();

    Matrix gram = Matrix::Zero(m.values.cols(), m.values.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(m.values.transpose());
    gram.diagonal().array() += eta;
    Eigen::LLT<Matrix> llt(gram.selfadjointView<Eigen::Lower>());
    if (llt.info() != Eigen::Success) {
        throw NumericError("memory capacity normal equations failed");
    }

    const Index ia = input.index_of(t_a);
    if (ia < tau_max_steps) {
        throw BufferError("input history too short for the requested delays");
    }

    MemoryCapacity mc;
    mc.per_tau.reserve(static_cast<std::size_t>(tau_max_steps));
    const auto nd = static_cast<double>(rows);
    for (Index tau = 1; tau <= tau_max_steps; ++tau) {
        const Vector g = input.values.col(0).segment(ia - tau, rows);
        const Vector kappa = llt.solve(m.values.transpose() * g);
        const Vector h = m.values * kappa;
        const double gm = g.mean();
        const double hm = h.mean();
        const double gv = (g.array() - gm).square().sum() / nd;
        const double hv = (h.array() - hm).square().sum() / nd;
        double term = 0.0;
        if (gv > 0.0 && hv > 0.0) {
            const double cov = ((g.array() - gm) * (h.array() - hm)).sum() / nd;
            term = (cov * cov) / (gv * hv);
            term = std::min(std::max(term, 0.0), 1.0);
        }
        mc.per_tau.push_back(term);
        mc.total += term;
    }
    return mc;
}

} // namespace shiftres
