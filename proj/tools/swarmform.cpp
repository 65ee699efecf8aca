// swarmform: run, sweep and validate spring-damper swarm scenarios.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarmform/errors.hpp"
#include "swarmform/io.hpp"
#include "swarmform/scenario.hpp"

namespace fs = std::filesystem;
using namespace swarmform;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kDivergence = 2, kIo = 3 };

struct SeedSpan {
    std::uint64_t first{0};
    std::uint64_t last{0};
};

SeedSpan parse_seeds(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const auto s = std::stoull(text);
            return {s, s};
        }
        SeedSpan span{std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
        if (span.last < span.first) throw ConfigError("--seeds range is reversed: " + text);
        return span;
    } catch (const std::logic_error&) {
        throw ConfigError("--seeds expects A..B, got '" + text + "'");
    }
}

std::string range_tag(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r);
    return buf;
}

void emit(const RunResult& result, const fs::path& dir, const std::string& trajectory,
          const std::string& metrics) {
    fs::create_directories(dir);
    if (!trajectory.empty()) write_trajectory(result, dir / trajectory);
    if (!metrics.empty()) write_metrics(result, dir / metrics);
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<long> steps,
            std::optional<std::string> out_dir) {
    ScenarioConfig config = load_config(config_path);
    if (seed) config.seed = *seed;
    if (steps) config.max_steps = *steps;
    if (out_dir) config.output.dir = *out_dir;
    validate(config);

    const RunResult result = run(config);
    emit(result, config.output.dir, config.output.trajectory, config.output.metrics);
    std::cout << "steps=" << result.steps_executed << " converged=" << (result.converged ? "true" : "false")
              << " phase=" << result.summary.final_phase
              << " components=" << result.summary.final_component_count << '\n';
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& seeds, const std::vector<double>& ranges,
              std::optional<std::string> out_dir) {
    ScenarioConfig base = load_config(config_path);
    if (out_dir) base.output.dir = *out_dir;
    const SeedSpan span = parse_seeds(seeds);
    if (ranges.empty()) throw ConfigError("--range needs at least one value");

    const fs::path dir = base.output.dir;
    fs::create_directories(dir);
    const fs::path csv_path = dir / "sweep.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw IoError("cannot open for writing", csv_path.string());
    csv << "seed,range,component_count,converged,steps\n";

    for (std::uint64_t s = span.first;; ++s) {
        for (double r : ranges) {
            ScenarioConfig config = base;
            config.seed = s;
            config.sensing_range = SensingRange(r);
            validate(config);
            const RunResult result = run(config);
            const std::string stem = "seed" + std::to_string(s) + "_range" + range_tag(r);
            write_metrics(result, dir / ("metrics_" + stem + ".json"));
            csv << s << ',' << range_tag(r) << ',' << result.summary.final_component_count << ','
                << (result.converged ? "true" : "false") << ',' << result.steps_executed << '\n';
        }
        if (s == span.last) break;
    }
    csv.flush();
    if (!csv) throw IoError("write failed", csv_path.string());
    return kOk;
}

int cmd_validate(const std::string& config_path) {
    const ScenarioConfig config = load_config(config_path);
    std::cout << "ok: " << config.n_agents << " agents, "
              << (config.behavior == Behavior::Line ? "line" : "dispersion") << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spring-damper swarm formation simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> steps;
    std::optional<std::string> out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run one scenario");
    run_cmd->add_option("--config", config_path, "Scenario JSON")->required();
    run_cmd->add_option("--seed", seed, "Override the seed");
    run_cmd->add_option("--steps", steps, "Override max_steps");
    run_cmd->add_option("--out-dir", out_dir, "Override output directory");

    std::string seeds;
    std::vector<double> ranges;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a seed x sensing-range grid");
    sweep_cmd->add_option("--config", config_path, "Scenario JSON")->required();
    sweep_cmd->add_option("--seeds", seeds, "Seed span A..B")->required();
    sweep_cmd->add_option("--range", ranges, "Sensing ranges R1,R2,...")->required()->delimiter(',');
    sweep_cmd->add_option("--out-dir", out_dir, "Override output directory");

    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("--config", config_path, "Scenario JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*run_cmd) return cmd_run(config_path, seed, steps, out_dir);
        if (*sweep_cmd) return cmd_sweep(config_path, seeds, ranges, out_dir);
        if (*validate_cmd) return cmd_validate(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kDivergence;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    }
    return kOk;
}
