#pragma once

#include <string>
#include <variant>

#include <Eigen/Dense>

#include "shiftres/errors.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

enum class SystemKind { Lorenz96, Lorenz, HindmarshRose };

inline std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::Lorenz96: return "lorenz96";
        case SystemKind::Lorenz: return "lorenz";
        case SystemKind::HindmarshRose: return "hindmarsh_rose";
    }
    return "?";
}

struct Lorenz96Params {
    double forcing = 8.0;
    int node_count = 4;
};

struct LorenzParams {
    double c1 = 10.0;
    double c2 = 28.0;
    double c3 = 8.0 / 3.0;
};

/// All constants fixed: dx = y - x^3 + 3x^2 - z + 3, dy = 1 - 5x^2 - y,
/// dz = 5e-3 * (4(x + 8/5) - z). The drive current 3 keeps the fast
/// subsystem bursting; below roughly 1.3 the model settles to a fixed point
/// and the input signal degenerates to a constant.
struct HindmarshRoseParams {};

/// One of the three chaotic benchmark systems.
struct ChaoticSystem {
    SystemKind kind;
    std::variant<Lorenz96Params, LorenzParams, HindmarshRoseParams> params;

    static ChaoticSystem lorenz96(double forcing = 8.0, int node_count = 4) {
        if (node_count < 4) {
            throw ConfigError("lorenz96 needs at least 4 nodes");
        }
        return {SystemKind::Lorenz96, Lorenz96Params{forcing, node_count}};
    }

    static ChaoticSystem lorenz(double c1 = 10.0, double c2 = 28.0, double c3 = 8.0 / 3.0) {
        return {SystemKind::Lorenz, LorenzParams{c1, c2, c3}};
    }

    static ChaoticSystem hindmarsh_rose() {
        return {SystemKind::HindmarshRose, HindmarshRoseParams{}};
    }

    Index dimension() const {
        if (kind == SystemKind::Lorenz96) {
            return std::get<Lorenz96Params>(params).node_count;
        }
        return 3;
    }
};

/// Time derivative of the system at the given state.
inline Vector system_rhs(const ChaoticSystem& sys, const Vector& state) {
    if (state.size() != sys.dimension()) {
        throw ConfigError("state dimension " + std::to_string(state.size()) +
                          " does not match system dimension " +
                          std::to_string(sys.dimension()));
    }
    Vector d(state.size());
    switch (sys.kind) {
        case SystemKind::Lorenz96: {
            const auto& p = std::get<Lorenz96Params>(sys.params);
            const Index m = p.node_count;
            // Cyclic indexing: x(-1)=x(M-1), x(0)=x(M), x(M+1)=x(1) in the
            // 1-based convention; plain modular arithmetic in 0-based indices.
            for (Index i = 0; i < m; ++i) {
                const double xp1 = state[(i + 1) % m];
                const double xm2 = state[(i + m - 2) % m];
                const double xm1 = state[(i + m - 1) % m];
                d[i] = (xp1 - xm2) * xm1 - state[i] + p.forcing;
            }
            break;
        }
        case SystemKind::Lorenz: {
            const auto& p = std::get<LorenzParams>(sys.params);
            const double x = state[0], y = state[1], z = state[2];
            d[0] = p.c1 * (y - x);
            d[1] = x * (p.c2 - z) - y;
            d[2] = x * y - p.c3 * z;
            break;
        }
        case SystemKind::HindmarshRose: {
            const double x = state[0], y = state[1], z = state[2];
            const double phi = -x * x * x + 3.0 * x * x;
            const double psi = 1.0 - 5.0 * x * x;
            d[0] = y + phi - z + 3.0;
            d[1] = psi - y;
            d[2] = 5e-3 * (4.0 * (x + 8.0 / 5.0) - z);
            break;
        }
    }
    return d;
}

} // namespace shiftres
