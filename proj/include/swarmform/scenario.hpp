#pragma once

// Scenario configuration, seeded initialization and the run loop.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swarmform/behaviors.hpp"
#include "swarmform/dynamics.hpp"

namespace swarmform {

enum class Behavior { Dispersion, Line };

struct Region {
    double width{100.0};
    double height{100.0};

    bool operator==(const Region&) const = default;
};

struct OutputSpec {
    std::string dir{"."};
    std::string trajectory{"trajectory.csv"};  ///< empty: not written
    std::string metrics{"metrics.json"};       ///< empty: not written

    bool operator==(const OutputSpec&) const = default;
};

/// Fully resolved scenario. Parameters whose default depends on L_d are
/// resolved when the config is parsed.
struct ScenarioConfig {
    Behavior behavior{Behavior::Dispersion};
    int n_agents{50};
    Region region;
    std::uint64_t seed{1};
    double L_d{10.0};
    double epsilon{0.5};
    double line_spacing{10.0};
    SensingRange sensing_range;
    double k{0.05};
    double b{0.15};
    double dt{1.0};
    double leader_force{0.25};
    std::optional<double> max_speed;
    long max_steps{5000};
    double v_tol{0.01};
    int window{50};
    int topology_refresh_every{1};
    bool reciprocal_links{true};
    int sample_every{1};
    double pair_close_factor{2.0};
    double chain_residual_fraction{0.2};
    OutputSpec output;

    bool operator==(const ScenarioConfig&) const = default;

    SimParams sim_params() const;
    LineParams line_params() const;
};

/// Throws ConfigError describing the first violated constraint.
void validate(const ScenarioConfig& config);

struct MetricsRecord {
    long step{0};
    double max_speed{0.0};
    std::optional<double> mean_abs_error;
    double eigen_ratio{0.0};
    int component_count{1};
    std::string phase_label;
};

struct RunSummary {
    bool converged{false};
    long steps{0};
    std::optional<double> final_mean_abs_error;
    double final_eigen_ratio{0.0};
    int final_component_count{1};
    std::string final_phase;
};

struct RunResult {
    ScenarioConfig config;
    World final_world;
    long steps_executed{0};
    bool converged{false};
    std::vector<MetricsRecord> metrics_series;
    /// World snapshots at the sampled steps, aligned with metrics_series.
    std::vector<World> frames;
    /// Links that drove the last step.
    LinkSet final_links;
    /// Every agent that received a nonzero external force at some step.
    std::set<AgentId> forced_agents;
    RunSummary summary;
};

/// Uniform positions over the region from xoshiro256** seeded with
/// config.seed, drawn in the order x0, y0, x1, y1, ...; zero velocities,
/// unit masses, time 0.
World init_world(const ScenarioConfig& config);

/// Components at the config's sensing range; 1 when the range is unlimited.
int connectivity(const World& world, const ScenarioConfig& config);

RunResult run(const ScenarioConfig& config);

/// Same loop starting from a caller-supplied world.
RunResult run(const ScenarioConfig& config, World initial);

}  // namespace swarmform
