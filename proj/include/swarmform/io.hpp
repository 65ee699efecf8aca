#pragma once

// JSON config mapping and trajectory / metrics file output.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "swarmform/scenario.hpp"

namespace swarmform {

/// Keys mirror the ScenarioConfig field names. Unknown keys and wrongly
/// typed values raise ConfigError; missing keys take their defaults
/// (epsilon, line_spacing, leader_force and v_tol scale with L_d).
/// `sensing_range` and `max_speed` accept null for "unlimited" / "off".
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& config);

ScenarioConfig load_config(const std::filesystem::path& path);

/// CSV `step,agent_id,x,y,vx,vy`, one row per agent per sampled step,
/// 9 significant digits.
void write_trajectory(const RunResult& result, const std::filesystem::path& path);

nlohmann::json metrics_to_json(const RunResult& result);
void write_metrics(const RunResult& result, const std::filesystem::path& path);

struct TrajectoryRow {
    long step{0};
    AgentId agent_id{0};
    Vec2 position;
    Vec2 velocity;
};

std::vector<TrajectoryRow> read_trajectory(const std::filesystem::path& path);

}  // namespace swarmform
