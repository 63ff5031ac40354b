#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "shiftres/integrate.hpp"
#include "shiftres/reservoir.hpp"
#include "shiftres/rng.hpp"
#include "shiftres/systems.hpp"

using namespace shiftres;

namespace {

TimeSeries constant_input(double value, double dt, double t_end) {
    TimeSeries s;
    s.t_start = 0.0;
    s.dt = dt;
    s.values = Matrix::Constant(static_cast<Index>(std::llround(t_end / dt)) + 1, 1, value);
    return s;
}

TimeSeries lorenz_input(double dt, double t_end, std::uint64_t seed) {
    return integrate(ChaoticSystem::lorenz(), random_initial_state(3, seed), dt, t_end)
        .component(0);
}

} // namespace

TEST_CASE("two-node adjacency has the predicted spectrum") {
    const auto [a, beta] = build_adjacency(2, 17);
    const double off = a(0, 1);
    REQUIRE(off >= 0.0);
    REQUIRE(off < 1.0);
    REQUIRE(a(1, 0) == off);
    REQUIRE(beta == -off - 0.1);
    REQUIRE(a(0, 0) == beta);
    REQUIRE(a(1, 1) == beta);

    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    REQUIRE(es.eigenvalues()[0] == Catch::Approx(-2.0 * off - 0.1).margin(1e-12));
    REQUIRE(es.eigenvalues()[1] == Catch::Approx(-0.1).margin(1e-12));
}

TEST_CASE("adjacency construction is deterministic in the seed") {
    const auto [a1, b1] = build_adjacency(60, 5);
    const auto [a2, b2] = build_adjacency(60, 5);
    const auto [a3, b3] = build_adjacency(60, 6);
    REQUIRE(a1 == a2);
    REQUIRE(b1 == b2);
    REQUIRE(a1(0, 1) != a3(0, 1));
}

TEST_CASE("adjacency is symmetric with uniform couplings and a stabilizing diagonal") {
    const auto [a, beta] = build_adjacency(40, 11);
    REQUIRE(beta < 0.0);
    for (Index i = 0; i < 40; ++i) {
        REQUIRE(a(i, i) == beta);
        for (Index j = i + 1; j < 40; ++j) {
            REQUIRE(a(i, j) == a(j, i));
            REQUIRE(a(i, j) >= 0.0);
            REQUIRE(a(i, j) < 1.0);
        }
    }
    Matrix off = a;
    off.diagonal().setZero();
    double max_row_sum = 0.0;
    for (Index i = 0; i < 40; ++i) {
        max_row_sum = std::max(max_row_sum, off.row(i).sum());
    }
    REQUIRE(beta == -max_row_sum - 0.1);
}

TEST_CASE("a hundred seeds pass the spectral check") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        REQUIRE_NOTHROW(build_adjacency(50, seed));
    }
}

TEST_CASE("zero input leaves the reservoir exactly at rest") {
    const auto cfg = make_reservoir_config(15, 3, 0.8, 0.9, 0.01);
    const auto traj = drive(cfg, constant_input(0.0, 0.01, 10.0), 5.0, 10.0);
    REQUIRE(traj.states.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(traj.derivatives.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decoupled nodes relax to tanh of a constant input") {
    const auto cfg = make_reservoir_config(10, 3, 0.0, 1.0, 0.01);
    const double s0 = 0.7;
    const auto traj = drive(cfg, constant_input(s0, 0.01, 6.0), 5.0, 6.0);

    const double target = std::tanh(s0);
    for (Index k = 0; k < traj.samples(); ++k) {
        REQUIRE(std::abs(traj.states(k, 0) - target) < 1e-2 * std::abs(target));
        // With epsilon = 0 every node obeys the identical scalar equation.
        REQUIRE(traj.states.row(k).maxCoeff() == traj.states.row(k).minCoeff());
    }
}

TEST_CASE("driven states stay inside the unit saturation ball") {
    const auto cfg = make_reservoir_config(20, 7, 0.8, 0.9, 0.01);
    const auto traj = drive(cfg, lorenz_input(0.01, 15.0, 21), 5.0, 15.0);
    REQUIRE(traj.states.allFinite());
    REQUIRE(traj.states.cwiseAbs().maxCoeff() < 1.01);
}

TEST_CASE("recorded derivatives match a centered difference of the states") {
    const auto cfg = make_reservoir_config(20, 7, 0.8, 0.9, 0.01);
    const auto traj = drive(cfg, lorenz_input(0.01, 15.0, 21), 5.0, 15.0);

    std::vector<double> err;
    for (Index k = 1; k + 1 < traj.samples(); ++k) {
        for (Index i = 0; i < 20; ++i) {
            const double fd = (traj.states(k + 1, i) - traj.states(k - 1, i)) / (2.0 * traj.dt);
            err.push_back(std::abs(fd - traj.derivatives(k, i)));
        }
    }
    auto mid = err.begin() + static_cast<std::ptrdiff_t>(err.size() / 2);
    std::nth_element(err.begin(), mid, err.end());
    REQUIRE(*mid < 1e-3);
}

TEST_CASE("drive is deterministic") {
    const auto cfg = make_reservoir_config(12, 9, 0.8, 1.3, 0.01);
    const auto input = lorenz_input(0.01, 8.0, 22);
    const auto t1 = drive(cfg, input, 4.0, 8.0);
    const auto t2 = drive(cfg, input, 4.0, 8.0);
    REQUIRE(t1.states == t2.states);
    REQUIRE(t1.derivatives == t2.derivatives);
}

TEST_CASE("doubling the rate and halving the step rescales time exactly") {
    const auto input = lorenz_input(0.01, 20.0, 23);
    const auto cfg = make_reservoir_config(30, 3, 0.8, 0.9, 0.01);
    const auto slow = drive(cfg, input, 10.0, 20.0);

    TimeSeries squeezed = input; // same samples read twice as fast
    squeezed.dt = 0.005;
    ReservoirConfig fast_cfg = cfg;
    fast_cfg.gamma = 2.0 * cfg.gamma;
    fast_cfg.dt = 0.005;
    const auto fast = drive(fast_cfg, squeezed, 5.0, 10.0);

    REQUIRE(fast.samples() == slow.samples());
    // Power-of-two rescaling commutes with every rounding in the integrator.
    REQUIRE(fast.states == slow.states);
    REQUIRE(fast.derivatives == (2.0 * slow.derivatives).eval());
}

TEST_CASE("an unstable rate diverges with a reported step") {
    const auto cfg = make_reservoir_config(10, 3, 0.8, 1000.0, 0.01);
    try {
        drive(cfg, lorenz_input(0.01, 10.0, 21), 0.0, 10.0);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        REQUIRE(e.step > 0);
    }
}

TEST_CASE("drive validates its input series") {
    const auto cfg = make_reservoir_config(10, 3, 0.8, 0.9, 0.01);

    TimeSeries wide;
    wide.t_start = 0.0;
    wide.dt = 0.01;
    wide.values = Matrix::Zero(1001, 2);
    REQUIRE_THROWS_AS(drive(cfg, wide, 0.0, 5.0), ConfigError);

    REQUIRE_THROWS_AS(drive(cfg, constant_input(0.1, 0.02, 10.0), 0.0, 5.0), ConfigError);
    REQUIRE_THROWS_AS(drive(cfg, constant_input(0.1, 0.01, 10.0), 0.0, 20.0), ConfigError);
    REQUIRE_THROWS_AS(drive(cfg, constant_input(0.1, 0.01, 10.0), -1.0, 5.0), ConfigError);
    REQUIRE_THROWS_AS(drive(cfg, constant_input(0.1, 0.01, 10.0), 6.0, 5.0), ConfigError);
}

TEST_CASE("reservoir configs reject out-of-range parameters") {
    auto cfg = make_reservoir_config(10, 3, 0.8, 0.9, 0.01);
    REQUIRE_NOTHROW(cfg.validate());

    auto bad = cfg;
    bad.gamma = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.epsilon = -0.5;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.input_weights = Vector::Ones(9);
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.beta = 0.3;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);

    REQUIRE_THROWS_AS(build_adjacency(1, 3), ConfigError);
}

TEST_CASE("input weights are all ones and the seed is recorded") {
    const auto cfg = make_reservoir_config(25, 14, 0.8, 0.9, 0.01);
    REQUIRE(cfg.input_weights == Vector::Ones(25));
    REQUIRE(cfg.seed == 14);
    REQUIRE(cfg.n_nodes == 25);
}
