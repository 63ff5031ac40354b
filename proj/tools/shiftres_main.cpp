#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "shiftres/shiftres.hpp"

namespace {

// Exit codes: 0 success, 1 bad configuration, 2 I/O failure, 3 every grid
// point lost to divergence or another numerical failure.
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

int run_command(const std::string& config_path,
                const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) {
        kv = shiftres::parse_config_file(config_path);
    }
    for (const auto& [key, value] : overrides) {
        kv[key] = value;
    }
    const shiftres::ExperimentConfig cfg = shiftres::resolve_config(kv);
    const shiftres::SweepResult result = shiftres::run_sweep(cfg);
    const auto written = shiftres::emit(result, cfg.out_dir, cfg.format);
    for (const auto& path : written) {
        std::cout << path << '\n';
    }
    const std::size_t failed = result.metadata.at("errors").size();
    if (failed > 0) {
        std::cerr << failed << " grid point(s) failed; see the metadata errors\n";
    }
    if (result.rows.empty()) {
        return kExitNumeric;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-shifted reservoir computing experiment runner"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run one parameter sweep and emit results");
    std::string config_path;
    run->add_option("config", config_path, "key=value config file");
    std::map<std::string, std::string> overrides;
    std::string task, sweep, out, format;
    std::uint64_t seed = 0;
    int jobs = 0;
    run->add_option("--task", task, "task preset")
        ->check(CLI::IsMember({"lorenz96", "lorenz", "hr"}));
    run->add_option("--sweep", sweep, "swept parameter")
        ->check(CLI::IsMember({"gamma", "epsilon", "alpha", "compare"}));
    run->add_option("--seed", seed, "base seed");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--out", out, "output directory");
    run->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (!task.empty()) overrides["task"] = task;
    if (!sweep.empty()) overrides["sweep"] = sweep;
    if (run->count("--seed") > 0) overrides["seed"] = std::to_string(seed);
    if (run->count("--jobs") > 0) overrides["jobs"] = std::to_string(jobs);
    if (!out.empty()) overrides["out"] = out;
    if (!format.empty()) overrides["format"] = format;

    try {
        return run_command(config_path, overrides);
    } catch (const shiftres::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const shiftres::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const shiftres::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const shiftres::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
