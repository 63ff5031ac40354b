#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shiftres/errors.hpp"
#include "shiftres/readout.hpp"
#include "shiftres/reservoir.hpp"
#include "shiftres/rng.hpp"
#include "shiftres/task.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

/// Per-node readout delays together with how they were produced.
struct ShiftVector {
    std::vector<double> taus;
    ShiftMode mode = ShiftMode::None;
    double alpha = 0.0;
    Index clamp_count = 0;      // optimized shifts pinned to the window edge
    Index degenerate_count = 0; // nodes whose weight was too small to divide by

    static ShiftVector none(Index n) {
        ShiftVector s;
        s.taus.assign(static_cast<std::size_t>(n), 0.0);
        return s;
    }
};

/// Draw tau_i ~ Uniform[0, alpha * tau_bar] independently per node.
inline ShiftVector sample_random_shifts(Index n, double alpha, double tau_bar,
                                        std::uint64_t seed) {
    if (alpha < 0.0 || tau_bar <= 0.0) {
        throw ConfigError("shift scale must be nonnegative and tau_bar positive");
    }
    ShiftVector s;
    s.mode = ShiftMode::Random;
    s.alpha = alpha;
    s.taus.resize(static_cast<std::size_t>(n));
    std::mt19937_64 gen(seed);
    for (auto& tau : s.taus) {
        tau = alpha * tau_bar * u01(gen);
    }
    return s;
}

struct OptimizedShifts {
    ShiftVector shifts;
    ReadoutModel model; // refitted on the shifted matrix; joint fit kept alongside
};

/// First-order shift optimization. Fit target g jointly on states and
/// derivatives over [t_a, t_b]:
///     g(t) ~ sum_i kappa_i r_i(t) + lambda_i r'_i(t) + bias,
/// read tau_i = -lambda_i / kappa_i (a node's shifted state is, to first
/// order, r_i(t) - tau_i r'_i(t)), clamp each tau into [shift_lo, shift_hi],
/// then refit plain ridge weights on the shifted matrix. Nodes with |kappa_i|
/// below a relative floor keep tau_i = 0 and are counted as degenerate.
inline OptimizedShifts optimize_shifts(const ReservoirTrajectory& traj, double t_a,
                                       double t_b, const Vector& g, double eta,
                                       double shift_lo, double shift_hi) {
    if (shift_lo > 0.0 || shift_hi < 0.0) {
        throw ConfigError("shift bounds must bracket zero");
    }
    const Index n = traj.config.n_nodes;
    const std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
    const ReadoutMatrix joint = build_matrix(traj, t_a, t_b, zero, true);
    if (joint.rows() != g.size()) {
        throw ConfigError("target length does not match the fitting window");
    }
    const Vector coef = ridge_solve(joint.values, g, eta);
    const Vector kappa = coef.head(n);
    const Vector lambda = coef.segment(n, n);

    // Relative floor on |kappa_i|: below it the ratio -lambda/kappa is noise.
    const double floor = 1e-12 * kappa.cwiseAbs().maxCoeff();

    OptimizedShifts out;
    out.shifts.mode = ShiftMode::Optimized;
    out.shifts.taus.assign(static_cast<std::size_t>(n), 0.0);
    for (Index i = 0; i < n; ++i) {
        if (std::abs(kappa(i)) <= floor) {
            ++out.shifts.degenerate_count;
            continue;
        }
        double tau = -lambda(i) / kappa(i);
        if (tau < shift_lo) {
            tau = shift_lo;
            ++out.shifts.clamp_count;
        } else if (tau > shift_hi) {
            tau = shift_hi;
            ++out.shifts.clamp_count;
        }
        out.shifts.taus[static_cast<std::size_t>(i)] = tau;
    }

    const ReadoutMatrix shifted = build_matrix(traj, t_a, t_b, out.shifts.taus, false);
    out.model = ridge_fit(shifted, g, eta);
    out.model.lambda = lambda;
    Vector kj(n + 1);
    kj.head(n) = kappa;
    kj(n) = coef(2 * n);
    out.model.kappa_joint = kj;
    return out;
}

/// Fit on [t1, t2], score on [t2, t3], same shifts in both windows.
inline ErrorReport evaluate(const ReservoirTrajectory& traj, const TaskData& task,
                            const ShiftVector& shifts, double eta,
                            std::uint64_t seed = 0) {
    const TaskDefinition& def = task.def;
    const ReadoutMatrix m_tr = build_matrix(traj, def.t1, def.t2, shifts.taus, false);
    const Vector g_tr = window_vector(task.target, def.t1, def.t2);
    const ReadoutModel model = ridge_fit(m_tr, g_tr, eta);

    const ReadoutMatrix m_ts = build_matrix(traj, def.t2, def.t3, shifts.taus, false);
    const Vector g_ts = window_vector(task.target, def.t2, def.t3);

    ErrorReport rep;
    rep.delta_tr = nrmse(model.predict(m_tr), g_tr);
    rep.delta_ts = nrmse(model.predict(m_ts), g_ts);
    rep.seed = seed;
    rep.gamma = traj.config.gamma;
    rep.epsilon = traj.config.epsilon;
    rep.alpha = shifts.alpha;
    rep.mode = shifts.mode;
    rep.clamp_count = shifts.clamp_count;
    rep.degenerate_count = shifts.degenerate_count;
    return rep;
}

/// Score a prefitted model on both task windows without refitting. Used to
/// evaluate the joint-fit weights applied directly to the shifted matrix.
inline ErrorReport apply_model(const ReservoirTrajectory& traj, const TaskData& task,
                               const ShiftVector& shifts, const Vector& kappa,
                               std::uint64_t seed = 0) {
    const TaskDefinition& def = task.def;
    const ReadoutMatrix m_tr = build_matrix(traj, def.t1, def.t2, shifts.taus, false);
    const ReadoutMatrix m_ts = build_matrix(traj, def.t2, def.t3, shifts.taus, false);
    if (kappa.size() != m_tr.values.cols()) {
        throw ConfigError("weight length does not match the shifted matrix");
    }
    const Vector g_tr = window_vector(task.target, def.t1, def.t2);
    const Vector g_ts = window_vector(task.target, def.t2, def.t3);

    ErrorReport rep;
    rep.delta_tr = nrmse(m_tr.values * kappa, g_tr);
    rep.delta_ts = nrmse(m_ts.values * kappa, g_ts);
    rep.seed = seed;
    rep.gamma = traj.config.gamma;
    rep.epsilon = traj.config.epsilon;
    rep.alpha = shifts.alpha;
    rep.mode = shifts.mode;
    rep.clamp_count = shifts.clamp_count;
    rep.degenerate_count = shifts.degenerate_count;
    return rep;
}

} // namespace shiftres
