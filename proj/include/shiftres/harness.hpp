#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "json.hpp"

#include "shiftres/config.hpp"
#include "shiftres/errors.hpp"
#include "shiftres/io.hpp"
#include "shiftres/readout.hpp"
#include "shiftres/reservoir.hpp"
#include "shiftres/rng.hpp"
#include "shiftres/task.hpp"
#include "shiftres/timeshift.hpp"

namespace shiftres {

using nlohmann::json;

/// One emitted sweep row: ensemble statistics of the errors at one grid point
/// for one shift mode. extra carries sweep-specific numbers (memory capacity
/// curves, joint-fit errors).
struct SweepRow {
    std::string sweep_param;
    double value = 0.0;
    ShiftMode mode = ShiftMode::None;
    double mean_delta_tr = 0.0;
    double std_delta_tr = 0.0;
    double mean_delta_ts = 0.0;
    double std_delta_ts = 0.0;
    Index ensemble = 1;
    std::uint64_t seed = 0;
    json extra = json::object();
};

struct SweepResult {
    json metadata;
    std::vector<SweepRow> rows;
};

inline ShiftMode shift_mode_by_name(const std::string& name) {
    if (name == "none") return ShiftMode::None;
    if (name == "random") return ShiftMode::Random;
    if (name == "optimized") return ShiftMode::Optimized;
    throw ConfigError("unknown shift mode '" + name + "'");
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

/// Mean and population standard deviation. Identical samples (including the
/// single-sample case) report exactly zero spread, with no rounding residue
/// from the mean.
inline MeanStd mean_std(const std::vector<double>& v) {
    MeanStd out;
    if (v.empty()) {
        throw NumericError("statistics of an empty sample");
    }
    bool all_equal = true;
    for (const double x : v) all_equal = all_equal && x == v.front();
    if (all_equal) {
        out.mean = v.front();
        return out;
    }
    const auto n = static_cast<double>(v.size());
    for (const double x : v) out.mean += x;
    out.mean /= n;
    double acc = 0.0;
    for (const double x : v) acc += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(acc / n);
    return out;
}

/// Run fn(0..n-1) on up to `jobs` worker threads, indices handed out through
/// an atomic counter. fn must write only to its own index's slots; the first
/// escaped exception is rethrown on the caller after all workers join.
template <typename Fn>
inline void parallel_for_index(Index n, int jobs, Fn&& fn) {
    const auto workers = static_cast<int>(
        std::min<Index>(std::max(jobs, 1), std::max<Index>(n, 1)));
    if (workers <= 1) {
        for (Index i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<Index> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    const auto work = [&] {
        for (;;) {
            const Index i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

namespace detail {

/// Recording/integration extent for one sweep. The gamma and epsilon sweeps
/// fit unshifted readouts, so they record exactly the task phases. The alpha
/// sweep needs history for delays up to sweep_max * tau_bar; the comparison
/// sweep records a generous margin on both sides so optimized shifts in
/// either direction stay on the trajectory.
struct Window {
    double record_start = 0.0;
    double record_end = 0.0;
    double t_end = 0.0;
};

inline Window sweep_window(const ExperimentConfig& cfg, double buffer_scale = 1.0) {
    const TaskDefinition& t = cfg.task;
    const double dt = cfg.dt;
    double pre = 0.0;
    double post = 0.0;
    if (cfg.sweep == SweepKind::Alpha) {
        pre = (std::ceil(buffer_scale * cfg.sweep_max * t.tau_bar / dt) + 1.0) * dt;
    } else if (cfg.sweep == SweepKind::Compare) {
        const double room = 5.0 * std::max(1.0, cfg.alpha) * t.tau_bar * buffer_scale;
        pre = post = std::ceil(room / dt) * dt;
    }
    Window w;
    w.record_start = std::max(0.0, t.t1 - pre);
    w.record_end = t.t3 + post;
    w.t_end = w.record_end;
    return w;
}

inline json task_echo(const TaskDefinition& t) {
    return json{{"name", t.name},
                {"system", to_string(t.system.kind)},
                {"input_component", t.input_component},
                {"target_component", t.target_component},
                {"t1", t.t1},
                {"t2", t.t2},
                {"t3", t.t3},
                {"tau_bar", t.tau_bar}};
}

/// Config echo shared by every sweep. Excludes jobs/out/format on purpose:
/// they change where and how results land, never what they are, and emitted
/// files must not depend on them.
inline json base_metadata(const ExperimentConfig& cfg, const Window& w) {
    json m;
    m["task"] = task_echo(cfg.task);
    m["sweep"] = to_string(cfg.sweep);
    m["n_nodes"] = cfg.n_nodes;
    m["dt"] = cfg.dt;
    m["eta"] = cfg.eta;
    m["seed"] = cfg.seed;
    m["ensemble"] = cfg.ensemble;
    m["sweep_min"] = cfg.sweep_min;
    m["sweep_max"] = cfg.sweep_max;
    m["sweep_steps"] = cfg.sweep_steps;
    m["record_start"] = w.record_start;
    m["record_end"] = w.record_end;
    m["errors"] = json::array();
    return m;
}

inline json point_error(const char* param, double value, const std::exception& e) {
    return json{{"sweep_param", param}, {"value", value}, {"message", e.what()}};
}

/// Collect per-index row and error slots into a SweepResult in grid order.
inline SweepResult assemble(json metadata,
                            std::vector<std::vector<SweepRow>>& row_slots,
                            std::vector<std::optional<json>>& error_slots) {
    SweepResult out;
    out.metadata = std::move(metadata);
    for (auto& slot : row_slots) {
        for (auto& row : slot) {
            out.rows.push_back(std::move(row));
        }
    }
    for (auto& err : error_slots) {
        if (err) {
            out.metadata["errors"].push_back(std::move(*err));
        }
    }
    return out;
}

} // namespace detail

/// Training-error curve of the unshifted readout vs gamma, one reservoir
/// simulation per grid point, epsilon held fixed. Reports the minimizer.
inline SweepResult run_gamma_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const detail::Window w = detail::sweep_window(cfg);
    const SeedLadder ladder{cfg.seed};
    const TaskData task = realize_task(cfg.task, cfg.dt, w.t_end,
                                       ladder.initial_state_seed());
    const auto [adjacency, beta] = build_adjacency(cfg.n_nodes, ladder.reservoir_seed());

    std::vector<std::vector<SweepRow>> rows(cfg.sweep_steps);
    std::vector<std::optional<json>> errors(cfg.sweep_steps);
    parallel_for_index(cfg.sweep_steps, cfg.jobs, [&](Index i) {
        const double gamma = cfg.grid_value(i);
        try {
            ReservoirConfig rc;
            rc.n_nodes = cfg.n_nodes;
            rc.adjacency = adjacency;
            rc.beta = beta;
            rc.epsilon = cfg.epsilon;
            rc.gamma = gamma;
            rc.input_weights = Vector::Ones(cfg.n_nodes);
            rc.dt = cfg.dt;
            rc.seed = ladder.reservoir_seed();
            const ReservoirTrajectory traj =
                drive(rc, task.input, w.record_start, w.record_end);
            const ErrorReport rep =
                evaluate(traj, task, ShiftVector::none(cfg.n_nodes), cfg.eta, cfg.seed);
            SweepRow row;
            row.sweep_param = "gamma";
            row.value = gamma;
            row.mode = ShiftMode::None;
            row.mean_delta_tr = rep.delta_tr;
            row.mean_delta_ts = rep.delta_ts;
            row.ensemble = 1;
            row.seed = cfg.seed;
            rows[i].push_back(std::move(row));
        } catch (const Error& e) {
            errors[i] = detail::point_error("gamma", gamma, e);
        }
    });

    json meta = detail::base_metadata(cfg, w);
    meta["epsilon"] = cfg.epsilon;
    SweepResult out = detail::assemble(std::move(meta), rows, errors);
    const SweepRow* best = nullptr;
    for (const auto& row : out.rows) {
        if (!best || row.mean_delta_tr < best->mean_delta_tr) best = &row;
    }
    if (best) {
        out.metadata["argmin_gamma"] = best->value;
        out.metadata["argmin_delta_tr"] = best->mean_delta_tr;
    }
    return out;
}

/// Memory capacity and baseline errors vs epsilon at fixed gamma. Reports the
/// capacity maximizer; each row carries its full per-delay capacity curve.
inline SweepResult run_epsilon_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const detail::Window w = detail::sweep_window(cfg);
    const SeedLadder ladder{cfg.seed};
    const TaskData task = realize_task(cfg.task, cfg.dt, w.t_end,
                                       ladder.initial_state_seed());
    const auto [adjacency, beta] = build_adjacency(cfg.n_nodes, ladder.reservoir_seed());

    std::vector<std::vector<SweepRow>> rows(cfg.sweep_steps);
    std::vector<std::optional<json>> errors(cfg.sweep_steps);
    parallel_for_index(cfg.sweep_steps, cfg.jobs, [&](Index i) {
        const double epsilon = cfg.grid_value(i);
        try {
            ReservoirConfig rc;
            rc.n_nodes = cfg.n_nodes;
            rc.adjacency = adjacency;
            rc.beta = beta;
            rc.epsilon = epsilon;
            rc.gamma = cfg.gamma;
            rc.input_weights = Vector::Ones(cfg.n_nodes);
            rc.dt = cfg.dt;
            rc.seed = ladder.reservoir_seed();
            const ReservoirTrajectory traj =
                drive(rc, task.input, w.record_start, w.record_end);
            const ErrorReport rep =
                evaluate(traj, task, ShiftVector::none(cfg.n_nodes), cfg.eta, cfg.seed);
            const MemoryCapacity mc = memory_capacity(
                traj, task.input, cfg.task.t1, cfg.task.t2, cfg.mc_tau_max, cfg.eta);
            SweepRow row;
            row.sweep_param = "epsilon";
            row.value = epsilon;
            row.mode = ShiftMode::None;
            row.mean_delta_tr = rep.delta_tr;
            row.mean_delta_ts = rep.delta_ts;
            row.ensemble = 1;
            row.seed = cfg.seed;
            row.extra["mc_total"] = mc.total;
            row.extra["mc_curve"] = mc.per_tau;
            rows[i].push_back(std::move(row));
        } catch (const Error& e) {
            errors[i] = detail::point_error("epsilon", epsilon, e);
        }
    });

    json meta = detail::base_metadata(cfg, w);
    meta["gamma"] = cfg.gamma;
    meta["mc_tau_max"] = cfg.mc_tau_max;
    SweepResult out = detail::assemble(std::move(meta), rows, errors);
    const SweepRow* best = nullptr;
    for (const auto& row : out.rows) {
        if (!best ||
            row.extra["mc_total"].get<double>() > best->extra["mc_total"].get<double>()) {
            best = &row;
        }
    }
    if (best) {
        out.metadata["argmax_epsilon"] = best->value;
        out.metadata["argmax_mc"] = best->extra["mc_total"];
    }
    return out;
}

/// Random-shift ensembles vs alpha on one shared reservoir trajectory. Should
/// a shift ever reach outside the recorded window, the whole sweep reruns
/// with a doubled history buffer (noted in the metadata).
inline SweepResult run_alpha_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const SeedLadder ladder{cfg.seed};
    json notes = json::array();

    for (int attempt = 0;; ++attempt) {
        const detail::Window w =
            detail::sweep_window(cfg, std::pow(2.0, attempt));
        const TaskData task = realize_task(cfg.task, cfg.dt, w.t_end,
                                           ladder.initial_state_seed());
        json meta = detail::base_metadata(cfg, w);
        meta["gamma"] = cfg.gamma;
        meta["epsilon"] = cfg.epsilon;

        ReservoirConfig rc = make_reservoir_config(cfg.n_nodes, ladder.reservoir_seed(),
                                                   cfg.epsilon, cfg.gamma, cfg.dt);
        ReservoirTrajectory traj;
        try {
            traj = drive(rc, task.input, w.record_start, w.record_end);
        } catch (const Error& e) {
            std::vector<std::vector<SweepRow>> rows(cfg.sweep_steps);
            std::vector<std::optional<json>> errors(cfg.sweep_steps);
            for (Index i = 0; i < cfg.sweep_steps; ++i) {
                errors[i] = detail::point_error("alpha", cfg.grid_value(i), e);
            }
            meta["notes"] = std::move(notes);
            return detail::assemble(std::move(meta), rows, errors);
        }

        std::vector<std::vector<SweepRow>> rows(cfg.sweep_steps);
        std::vector<std::optional<json>> errors(cfg.sweep_steps);
        std::atomic<bool> buffer_exceeded{false};
        parallel_for_index(cfg.sweep_steps, cfg.jobs, [&](Index i) {
            const double alpha = cfg.grid_value(i);
            try {
                std::vector<double> tr, ts;
                tr.reserve(cfg.ensemble);
                ts.reserve(cfg.ensemble);
                for (Index j = 0; j < cfg.ensemble; ++j) {
                    const ShiftVector shifts = sample_random_shifts(
                        cfg.n_nodes, alpha, cfg.task.tau_bar, ladder.shift_seed(i, j));
                    const ErrorReport rep = evaluate(traj, task, shifts, cfg.eta, cfg.seed);
                    tr.push_back(rep.delta_tr);
                    ts.push_back(rep.delta_ts);
                }
                const MeanStd str = mean_std(tr);
                const MeanStd sts = mean_std(ts);
                SweepRow row;
                row.sweep_param = "alpha";
                row.value = alpha;
                row.mode = ShiftMode::Random;
                row.mean_delta_tr = str.mean;
                row.std_delta_tr = str.std;
                row.mean_delta_ts = sts.mean;
                row.std_delta_ts = sts.std;
                row.ensemble = cfg.ensemble;
                row.seed = cfg.seed;
                rows[i].push_back(std::move(row));
            } catch (const BufferError& e) {
                if (attempt < 3) {
                    buffer_exceeded = true;
                } else {
                    errors[i] = detail::point_error("alpha", alpha, e);
                }
            } catch (const Error& e) {
                errors[i] = detail::point_error("alpha", alpha, e);
            }
        });

        if (buffer_exceeded && attempt < 3) {
            notes.push_back("history buffer exceeded, rerunning with scale " +
                            std::to_string(std::pow(2.0, attempt + 1)));
            continue;
        }
        meta["notes"] = std::move(notes);
        return detail::assemble(std::move(meta), rows, errors);
    }
}

/// None / random-ensemble / optimized shifts vs gamma on the same trajectory
/// per grid point. Optimized rows also carry the errors of the joint-fit
/// weights applied directly, plus clamp and degeneracy counters.
inline SweepResult run_shift_comparison(const ExperimentConfig& cfg) {
    cfg.validate();
    const detail::Window w = detail::sweep_window(cfg);
    const SeedLadder ladder{cfg.seed};
    const TaskData task = realize_task(cfg.task, cfg.dt, w.t_end,
                                       ladder.initial_state_seed());
    const auto [adjacency, beta] = build_adjacency(cfg.n_nodes, ladder.reservoir_seed());
    const Vector g_tr = window_vector(task.target, cfg.task.t1, cfg.task.t2);

    std::vector<std::vector<SweepRow>> rows(cfg.sweep_steps);
    std::vector<std::optional<json>> errors(cfg.sweep_steps);
    parallel_for_index(cfg.sweep_steps, cfg.jobs, [&](Index i) {
        const double gamma = cfg.grid_value(i);
        const auto make_row = [&](ShiftMode mode) {
            SweepRow row;
            row.sweep_param = "gamma";
            row.value = gamma;
            row.mode = mode;
            row.ensemble = 1;
            row.seed = cfg.seed;
            return row;
        };
        try {
            ReservoirConfig rc;
            rc.n_nodes = cfg.n_nodes;
            rc.adjacency = adjacency;
            rc.beta = beta;
            rc.epsilon = cfg.epsilon;
            rc.gamma = gamma;
            rc.input_weights = Vector::Ones(cfg.n_nodes);
            rc.dt = cfg.dt;
            rc.seed = ladder.reservoir_seed();
            const ReservoirTrajectory traj =
                drive(rc, task.input, w.record_start, w.record_end);

            SweepRow none_row = make_row(ShiftMode::None);
            const ErrorReport none_rep =
                evaluate(traj, task, ShiftVector::none(cfg.n_nodes), cfg.eta, cfg.seed);
            none_row.mean_delta_tr = none_rep.delta_tr;
            none_row.mean_delta_ts = none_rep.delta_ts;

            SweepRow random_row = make_row(ShiftMode::Random);
            std::vector<double> tr, ts;
            tr.reserve(cfg.ensemble);
            ts.reserve(cfg.ensemble);
            for (Index j = 0; j < cfg.ensemble; ++j) {
                const ShiftVector shifts = sample_random_shifts(
                    cfg.n_nodes, cfg.alpha, cfg.task.tau_bar, ladder.shift_seed(i, j));
                const ErrorReport rep = evaluate(traj, task, shifts, cfg.eta, cfg.seed);
                tr.push_back(rep.delta_tr);
                ts.push_back(rep.delta_ts);
            }
            const MeanStd str = mean_std(tr);
            const MeanStd sts = mean_std(ts);
            random_row.mean_delta_tr = str.mean;
            random_row.std_delta_tr = str.std;
            random_row.mean_delta_ts = sts.mean;
            random_row.std_delta_ts = sts.std;
            random_row.ensemble = cfg.ensemble;

            SweepRow opt_row = make_row(ShiftMode::Optimized);
            const OptimizedShifts opt = optimize_shifts(
                traj, cfg.task.t1, cfg.task.t2, g_tr, cfg.eta,
                cfg.task.t3 - traj.record_end(), cfg.task.t1 - traj.record_start);
            const ErrorReport opt_rep = evaluate(traj, task, opt.shifts, cfg.eta, cfg.seed);
            opt_row.mean_delta_tr = opt_rep.delta_tr;
            opt_row.mean_delta_ts = opt_rep.delta_ts;
            const ErrorReport joint_rep = apply_model(traj, task, opt.shifts,
                                                      *opt.model.kappa_joint, cfg.seed);
            opt_row.extra["delta_tr_joint"] = joint_rep.delta_tr;
            opt_row.extra["delta_ts_joint"] = joint_rep.delta_ts;
            opt_row.extra["clamp_count"] = opt.shifts.clamp_count;
            opt_row.extra["degenerate_count"] = opt.shifts.degenerate_count;

            rows[i].push_back(std::move(none_row));
            rows[i].push_back(std::move(random_row));
            rows[i].push_back(std::move(opt_row));
        } catch (const Error& e) {
            errors[i] = detail::point_error("gamma", gamma, e);
        }
    });

    json meta = detail::base_metadata(cfg, w);
    meta["epsilon"] = cfg.epsilon;
    meta["alpha"] = cfg.alpha;
    return detail::assemble(std::move(meta), rows, errors);
}

inline SweepResult run_sweep(const ExperimentConfig& cfg) {
    switch (cfg.sweep) {
    case SweepKind::Gamma: return run_gamma_sweep(cfg);
    case SweepKind::Epsilon: return run_epsilon_sweep(cfg);
    case SweepKind::Alpha: return run_alpha_sweep(cfg);
    case SweepKind::Compare: return run_shift_comparison(cfg);
    }
    throw ConfigError("unhandled sweep kind");
}

namespace detail {

inline json row_to_json(const SweepRow& row) {
    json j{{"sweep_param", row.sweep_param},
           {"value", row.value},
           {"shift_mode", to_string(row.mode)},
           {"mean_delta_tr", row.mean_delta_tr},
           {"std_delta_tr", row.std_delta_tr},
           {"mean_delta_ts", row.mean_delta_ts},
           {"std_delta_ts", row.std_delta_ts},
           {"ensemble", row.ensemble},
           {"seed", row.seed}};
    if (!row.extra.empty()) {
        j["extra"] = row.extra;
    }
    return j;
}

inline SweepRow row_from_json(const json& j) {
    SweepRow row;
    row.sweep_param = j.at("sweep_param").get<std::string>();
    row.value = j.at("value").get<double>();
    row.mode = shift_mode_by_name(j.at("shift_mode").get<std::string>());
    row.mean_delta_tr = j.at("mean_delta_tr").get<double>();
    row.std_delta_tr = j.at("std_delta_tr").get<double>();
    row.mean_delta_ts = j.at("mean_delta_ts").get<double>();
    row.std_delta_ts = j.at("std_delta_ts").get<double>();
    row.ensemble = j.at("ensemble").get<Index>();
    row.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("extra")) {
        row.extra = j.at("extra");
    }
    return row;
}

} // namespace detail

inline const char kCsvHeader[] = "sweep_param,value,shift_mode,mean_delta_tr,"
                                 "std_delta_tr,mean_delta_ts,std_delta_ts,ensemble,seed";

/// Write the sweep to <out_dir>/<task>_<sweep>.{csv,json}. An epsilon sweep
/// additionally writes <task>_epsilon_mc.csv holding the per-delay capacity
/// curves. Returns the written paths.
inline std::vector<std::string> emit(const SweepResult& result,
                                     const std::string& out_dir, OutputFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    }
    const std::string stem = out_dir + "/" +
                             result.metadata.at("task").at("name").get<std::string>() +
                             "_" + result.metadata.at("sweep").get<std::string>();
    std::vector<std::string> written;

    if (format == OutputFormat::Csv || format == OutputFormat::Both) {
        {
            auto out = open_output(stem + ".csv");
            out << kCsvHeader << '\n';
            for (const auto& row : result.rows) {
                out << row.sweep_param << ',' << format_double(row.value) << ','
                    << to_string(row.mode) << ',' << format_double(row.mean_delta_tr)
                    << ',' << format_double(row.std_delta_tr) << ','
                    << format_double(row.mean_delta_ts) << ','
                    << format_double(row.std_delta_ts) << ',' << row.ensemble << ','
                    << row.seed << '\n';
            }
            if (!out) {
                throw IoError("failed while writing " + stem + ".csv");
            }
            written.push_back(stem + ".csv");
        }
        bool any_mc = false;
        for (const auto& row : result.rows) {
            any_mc = any_mc || row.extra.contains("mc_curve");
        }
        if (any_mc) {
            const std::string mc_path = stem + "_mc.csv";
            auto out = open_output(mc_path);
            out << "epsilon,tau_steps,mc\n";
            for (const auto& row : result.rows) {
                if (!row.extra.contains("mc_curve")) continue;
                const auto& curve = row.extra.at("mc_curve");
                for (std::size_t k = 0; k < curve.size(); ++k) {
                    out << format_double(row.value) << ',' << (k + 1) << ','
                        << format_double(curve[k].get<double>()) << '\n';
                }
            }
            if (!out) {
                throw IoError("failed while writing " + mc_path);
            }
            written.push_back(mc_path);
        }
    }

    if (format == OutputFormat::Json || format == OutputFormat::Both) {
        json j;
        j["metadata"] = result.metadata;
        j["rows"] = json::array();
        for (const auto& row : result.rows) {
            j["rows"].push_back(detail::row_to_json(row));
        }
        auto out = open_output(stem + ".json");
        out << j.dump(2) << '\n';
        if (!out) {
            throw IoError("failed while writing " + stem + ".json");
        }
        written.push_back(stem + ".json");
    }
    return written;
}

inline SweepResult load_sweep_result_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("malformed sweep JSON in " + path + ": " + e.what());
    }
    SweepResult result;
    result.metadata = j.at("metadata");
    for (const auto& row : j.at("rows")) {
        result.rows.push_back(detail::row_from_json(row));
    }
    return result;
}

} // namespace shiftres
