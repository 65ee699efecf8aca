#include "swarmform/scenario.hpp"

#include <cmath>
#include <utility>

#include "swarmform/errors.hpp"
#include "swarmform/metrics.hpp"
#include "swarmform/rng.hpp"

namespace swarmform {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw ConfigError(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

SimParams ScenarioConfig::sim_params() const {
    return {dt, sensing_range, {k, b}, max_speed};
}

LineParams ScenarioConfig::line_params() const {
    return {epsilon, line_spacing, leader_force, pair_close_factor, chain_residual_fraction,
            sensing_range, {k, b}};
}

void validate(const ScenarioConfig& c) {
    require(c.n_agents >= 1, "n_agents must be at least 1");
    require(c.behavior != Behavior::Line || c.n_agents >= 2, "line behavior needs at least 2 agents");
    require(positive(c.region.width) && positive(c.region.height), "region must have positive size");
    require(positive(c.L_d), "L_d must be positive");
    require(positive(c.epsilon), "epsilon must be positive");
    require(c.epsilon < c.L_d, "epsilon must be smaller than L_d");
    require(positive(c.line_spacing) && c.line_spacing > c.epsilon,
            "line_spacing must be positive and larger than epsilon");
    if (auto r = c.sensing_range.limit()) require(positive(*r), "sensing_range must be positive");
    require(positive(c.k), "k must be positive");
    require(std::isfinite(c.b) && c.b >= 0.0, "b must be non-negative");
    require(positive(c.dt), "dt must be positive");
    require(positive(c.leader_force), "leader_force must be positive");
    if (c.max_speed) require(positive(*c.max_speed), "max_speed must be positive");
    require(c.max_steps >= 1, "max_steps must be at least 1");
    require(positive(c.v_tol), "v_tol must be positive");
    require(c.window >= 1, "window must be at least 1");
    require(c.topology_refresh_every >= 1, "topology_refresh_every must be at least 1");
    require(c.sample_every >= 1, "sample_every must be at least 1");
    require(positive(c.pair_close_factor), "pair_close_factor must be positive");
    require(positive(c.chain_residual_fraction), "chain_residual_fraction must be positive");
}

World init_world(const ScenarioConfig& config) {
    Xoshiro256StarStar rng(config.seed);
    World w;
    w.agents.reserve(static_cast<std::size_t>(config.n_agents));
    for (int i = 0; i < config.n_agents; ++i) {
        const double x = rng.uniform() * config.region.width;
        const double y = rng.uniform() * config.region.height;
        w.agents.push_back({i, {x, y}, {}, 1.0});
    }
    return w;
}

int connectivity(const World& world, const ScenarioConfig& config) {
    if (auto r = config.sensing_range.limit()) return component_count(world, *r);
    return world.size() == 0 ? 0 : 1;
}

RunResult run(const ScenarioConfig& config) { return run(config, init_world(config)); }

RunResult run(const ScenarioConfig& config, World initial) {
    validate(config);
    const SimParams params = config.sim_params();
    const LineParams line = config.line_params();

    RunResult result;
    result.config = config;
    World world = std::move(initial);
    LineControllerState line_state;
    ControlOutput control;
    std::vector<double> speeds;
    speeds.reserve(static_cast<std::size_t>(config.max_steps));

    for (long step = 0; step < config.max_steps; ++step) {
        if (config.behavior == Behavior::Dispersion) {
            if (step % config.topology_refresh_every == 0) {
                control = dispersion_controller(world, config.L_d, config.sensing_range, params.gains,
                                                config.reciprocal_links ? LinkMode::Reciprocal
                                                                        : LinkMode::Directed);
            }
        } else {
            auto [out, next_state] = line_controller(world, std::move(line_state), line);
            control = std::move(out);
            line_state = std::move(next_state);
        }
        for (const auto& [id, f] : control.external_forces) {
            if (f.x != 0.0 || f.y != 0.0) result.forced_agents.insert(id);
        }

        try {
            world = integrate_step(world, control.links, params, control.external_forces);
        } catch (const DivergenceError& e) {
            throw DivergenceError(std::string(e.what()) + " (step " + std::to_string(step + 1) + ")",
                                  e.agent(), step + 1);
        }
        speeds.push_back(max_speed(world));
        result.steps_executed = step + 1;

        const bool may_stop =
            config.behavior == Behavior::Dispersion || line_state.phase != LinePhase::Pairing;
        result.converged = may_stop && is_converged(speeds, config.v_tol, config.window);
        const bool last = result.converged || result.steps_executed == config.max_steps;

        if (result.steps_executed % config.sample_every == 0 || last) {
            MetricsRecord rec;
            rec.step = result.steps_executed;
            rec.max_speed = speeds.back();
            if (auto err = neighbor_distance_error(world, control.links)) rec.mean_abs_error = err->mean_abs_error;
            rec.eigen_ratio = collinearity(world).eigen_ratio;
            rec.component_count = connectivity(world, config);
            rec.phase_label = control.phase_label;
            result.metrics_series.push_back(std::move(rec));
            result.frames.push_back(world);
        }
        if (last) break;
    }

    result.final_links = control.links;
    result.final_world = std::move(world);
    const MetricsRecord& tail = result.metrics_series.back();
    result.summary = {result.converged,        result.steps_executed, tail.mean_abs_error,
                      tail.eigen_ratio,        tail.component_count,  tail.phase_label};
    return result;
}

}  // namespace swarmform
