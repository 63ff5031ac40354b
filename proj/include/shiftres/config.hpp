#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "shiftres/errors.hpp"
#include "shiftres/task.hpp"
#include "shiftres/time_series.hpp"

namespace shiftres {

enum class SweepKind { Gamma, Epsilon, Alpha, Compare };

inline const char* to_string(SweepKind k) {
    switch (k) {
    case SweepKind::Gamma: return "gamma";
    case SweepKind::Epsilon: return "epsilon";
    case SweepKind::Alpha: return "alpha";
    case SweepKind::Compare: return "compare";
    }
    return "?";
}

enum class OutputFormat { Csv, Json, Both };

inline TaskDefinition task_by_name(const std::string& name) {
    if (name == "lorenz96") return lorenz96_task();
    if (name == "lorenz") return lorenz_task();
    if (name == "hr") return hindmarsh_rose_task();
    throw ConfigError("unknown task '" + name + "' (expected lorenz96, lorenz, or hr)");
}

inline SweepKind sweep_by_name(const std::string& name) {
    if (name == "gamma") return SweepKind::Gamma;
    if (name == "epsilon") return SweepKind::Epsilon;
    if (name == "alpha") return SweepKind::Alpha;
    if (name == "compare") return SweepKind::Compare;
    throw ConfigError("unknown sweep '" + name +
                      "' (expected gamma, epsilon, alpha, or compare)");
}

/// One fully resolved experiment. The swept parameter runs over a uniform
/// grid [sweep_min, sweep_max] with sweep_steps points; gamma/epsilon/alpha
/// hold the values that stay fixed during that sweep.
struct ExperimentConfig {
    TaskDefinition task;
    SweepKind sweep = SweepKind::Gamma;
    Index n_nodes = 100;
    double dt = 0.01;
    double eta = 1e-6;
    double gamma = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    double sweep_min = 0.0;
    double sweep_max = 0.0;
    Index sweep_steps = 0;
    Index ensemble = 1;
    Index mc_tau_max = 300;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Both;

    double grid_value(Index i) const {
        if (sweep_steps <= 1) {
            return sweep_min;
        }
        return sweep_min + static_cast<double>(i) * (sweep_max - sweep_min) /
                               static_cast<double>(sweep_steps - 1);
    }

    void validate() const {
        task.validate();
        if (n_nodes < 2) throw ConfigError("n_nodes must be at least 2");
        if (!(dt > 0.0)) throw ConfigError("dt must be positive");
        if (!(eta > 0.0)) throw ConfigError("eta must be positive");
        if (sweep_steps < 1) throw ConfigError("sweep_steps must be at least 1");
        if (sweep_max < sweep_min) throw ConfigError("sweep range is reversed");
        if (ensemble < 1) throw ConfigError("ensemble must be at least 1");
        if (mc_tau_max < 1) throw ConfigError("mc_tau_max must be at least 1");
        if (jobs < 1) throw ConfigError("jobs must be at least 1");
        const bool sweeps_gamma =
            sweep == SweepKind::Gamma || sweep == SweepKind::Compare;
        if (sweeps_gamma && !(sweep_min > 0.0)) {
            throw ConfigError("gamma grid must start above zero");
        }
        if (!sweeps_gamma && sweep_min < 0.0) {
            throw ConfigError("sweep grid must be nonnegative");
        }
        if (!sweeps_gamma && !(gamma > 0.0)) {
            throw ConfigError("fixed gamma must be positive");
        }
        if (sweep != SweepKind::Epsilon && epsilon < 0.0) {
            throw ConfigError("fixed epsilon must be nonnegative");
        }
    }
};

/// Parse flat key=value text: one pair per line, '#' starts a comment, blank
/// lines ignored. Duplicate keys are errors; key validity is checked at
/// resolution.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " has an empty key or value");
        }
        if (!kv.emplace(key, value).second) {
            throw ConfigError("duplicate config key '" + key + "'");
        }
    }
    return kv;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path);
    }
    return parse_key_values(in);
}

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "' has a malformed number: " + v);
    }
    return out;
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "' has a malformed integer: " + v);
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "' has a malformed seed: " + v);
    }
    return out;
}

/// Default fixed parameters per task, taken from the sweep-figure setups.
/// The gamma sweep instead fixes epsilon = 1 regardless of task.
struct TaskDefaults {
    double gamma;
    double epsilon;
    double alpha;     // compare-mode fixed shift scale
    double alpha_max; // alpha-sweep grid end
};

inline TaskDefaults task_defaults(const std::string& name) {
    if (name == "lorenz96") return {0.9, 0.8, 4.0, 5.0};
    if (name == "lorenz") return {1.3, 2.0, 0.25, 1.0};
    if (name == "hr") return {1.65, 1.0, 2.5, 3.0};
    throw ConfigError("task '" + name + "' has no default parameters");
}

} // namespace detail

/// Build a runnable experiment from parsed key=value pairs. Unset parameters
/// fall back to the task's published operating point; the swept parameter's
/// fixed-value key (if present) is ignored in favor of the grid.
inline ExperimentConfig resolve_config(const std::map<std::string, std::string>& kv) {
    static const char* known[] = {"task",       "sweep",     "n_nodes",   "dt",
                                  "eta",        "gamma",     "epsilon",   "alpha",
                                  "sweep_min",  "sweep_max", "sweep_steps",
                                  "ensemble",   "mc_tau_max", "seed",     "jobs",
                                  "out",        "format"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    const auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    const std::string* task_name = get("task");
    const std::string* sweep_name = get("sweep");
    if (!task_name) throw ConfigError("config is missing the 'task' key");
    if (!sweep_name) throw ConfigError("config is missing the 'sweep' key");

    ExperimentConfig cfg;
    cfg.task = task_by_name(*task_name);
    cfg.sweep = sweep_by_name(*sweep_name);
    const detail::TaskDefaults defs = detail::task_defaults(*task_name);

    if (const auto* v = get("n_nodes")) cfg.n_nodes = detail::parse_int("n_nodes", *v);
    if (const auto* v = get("dt")) cfg.dt = detail::parse_double("dt", *v);
    if (const auto* v = get("eta")) cfg.eta = detail::parse_double("eta", *v);
    if (const auto* v = get("seed")) cfg.seed = detail::parse_u64("seed", *v);
    if (const auto* v = get("jobs")) cfg.jobs = static_cast<int>(detail::parse_int("jobs", *v));
    if (const auto* v = get("mc_tau_max"))
        cfg.mc_tau_max = detail::parse_int("mc_tau_max", *v);
    if (const auto* v = get("out")) cfg.out_dir = *v;
    if (const auto* v = get("format")) {
        if (*v == "csv") cfg.format = OutputFormat::Csv;
        else if (*v == "json") cfg.format = OutputFormat::Json;
        else if (*v == "both") cfg.format = OutputFormat::Both;
        else throw ConfigError("format must be csv, json, or both");
    }

    cfg.gamma = defs.gamma;
    cfg.epsilon = cfg.sweep == SweepKind::Gamma ? 1.0 : defs.epsilon;
    cfg.alpha = cfg.sweep == SweepKind::Compare ? defs.alpha : 0.0;
    if (const auto* v = get("gamma"); v && cfg.sweep != SweepKind::Gamma &&
                                      cfg.sweep != SweepKind::Compare) {
        cfg.gamma = detail::parse_double("gamma", *v);
    }
    if (const auto* v = get("epsilon"); v && cfg.sweep != SweepKind::Epsilon) {
        cfg.epsilon = detail::parse_double("epsilon", *v);
    }
    if (const auto* v = get("alpha"); v && cfg.sweep == SweepKind::Compare) {
        cfg.alpha = detail::parse_double("alpha", *v);
    }

    switch (cfg.sweep) {
    case SweepKind::Gamma:
    case SweepKind::Compare:
        cfg.sweep_min = 0.1;
        cfg.sweep_max = 5.0;
        cfg.sweep_steps = 25;
        break;
    case SweepKind::Epsilon:
        cfg.sweep_min = 0.1;
        cfg.sweep_max = 3.0;
        cfg.sweep_steps = 15;
        break;
    case SweepKind::Alpha:
        cfg.sweep_min = 0.0;
        cfg.sweep_max = defs.alpha_max;
        cfg.sweep_steps = 21;
        break;
    }
    if (const auto* v = get("sweep_min")) cfg.sweep_min = detail::parse_double("sweep_min", *v);
    if (const auto* v = get("sweep_max")) cfg.sweep_max = detail::parse_double("sweep_max", *v);
    if (const auto* v = get("sweep_steps"))
        cfg.sweep_steps = detail::parse_int("sweep_steps", *v);

    const bool has_ensemble =
        cfg.sweep == SweepKind::Alpha || cfg.sweep == SweepKind::Compare;
    cfg.ensemble = has_ensemble ? 50 : 1;
    if (const auto* v = get("ensemble"); v && has_ensemble) {
        cfg.ensemble = detail::parse_int("ensemble", *v);
    }

    cfg.validate();
    return cfg;
}

} // namespace shiftres
