#include "swarmform/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "swarmform/errors.hpp"

namespace swarmform {

using nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys{
    "behavior", "n_agents", "region", "seed", "L_d", "epsilon", "line_spacing", "sensing_range",
    "k", "b", "dt", "leader_force", "max_speed", "max_steps", "v_tol", "window",
    "topology_refresh_every", "reciprocal_links", "sample_every", "pair_close_factor", "chain_residual_fraction",
    "output"};

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing", path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed", path.string());
}

}  // namespace

ScenarioConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!kConfigKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    ScenarioConfig c;
    const auto behavior = get_or<std::string>(j, "behavior", "dispersion");
    if (behavior == "dispersion") {
        c.behavior = Behavior::Dispersion;
    } else if (behavior == "line") {
        c.behavior = Behavior::Line;
    } else {
        throw ConfigError("behavior must be 'dispersion' or 'line'");
    }
    c.n_agents = get_or(j, "n_agents", c.n_agents);
    if (j.contains("region")) {
        const auto& r = j.at("region");
        if (!r.is_object()) throw ConfigError("region must be an object {width, height}");
        for (const auto& [key, _] : r.items()) {
            if (key != "width" && key != "height") throw ConfigError("unknown region key '" + key + "'");
        }
        c.region.width = get_or(r, "width", c.region.width);
        c.region.height = get_or(r, "height", c.region.height);
    }
    if (j.contains("seed") && !j.at("seed").is_number_integer()) throw ConfigError("seed must be an integer");
    if (j.contains("seed") && j.at("seed").is_number_integer() && !j.at("seed").is_number_unsigned()) {
        throw ConfigError("seed must be non-negative");
    }
    c.seed = get_or(j, "seed", c.seed);
    c.L_d = get_or(j, "L_d", c.L_d);
    c.epsilon = get_or(j, "epsilon", 0.05 * c.L_d);
    c.line_spacing = get_or(j, "line_spacing", c.L_d);
    if (j.contains("sensing_range") && !j.at("sensing_range").is_null()) {
        c.sensing_range = SensingRange(get_or(j, "sensing_range", 0.0));
    }
    c.k = get_or(j, "k", c.k);
    c.b = get_or(j, "b", c.b);
    c.dt = get_or(j, "dt", c.dt);
    c.leader_force = get_or(j, "leader_force", 0.5 * c.k * c.L_d);
    if (j.contains("max_speed") && !j.at("max_speed").is_null()) {
        c.max_speed = get_or(j, "max_speed", 0.0);
    }
    c.max_steps = get_or(j, "max_steps", c.max_steps);
    c.v_tol = get_or(j, "v_tol", 1e-3 * c.L_d);
    c.window = get_or(j, "window", c.window);
    c.topology_refresh_every = get_or(j, "topology_refresh_every", c.topology_refresh_every);
    c.reciprocal_links = get_or(j, "reciprocal_links", c.reciprocal_links);
    c.sample_every = get_or(j, "sample_every", c.sample_every);
    c.pair_close_factor = get_or(j, "pair_close_factor", c.pair_close_factor);
    c.chain_residual_fraction = get_or(j, "chain_residual_fraction", c.chain_residual_fraction);
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (!o.is_object()) throw ConfigError("output must be an object");
        for (const auto& [key, _] : o.items()) {
            if (key != "dir" && key != "trajectory" && key != "metrics") {
                throw ConfigError("unknown output key '" + key + "'");
            }
        }
        c.output.dir = get_or(o, "dir", c.output.dir);
        c.output.trajectory = get_or(o, "trajectory", c.output.trajectory);
        c.output.metrics = get_or(o, "metrics", c.output.metrics);
    }
    validate(c);
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["behavior"] = c.behavior == Behavior::Line ? "line" : "dispersion";
    j["n_agents"] = c.n_agents;
    j["region"] = {{"width", c.region.width}, {"height", c.region.height}};
    j["seed"] = c.seed;
    j["L_d"] = c.L_d;
    j["epsilon"] = c.epsilon;
    j["line_spacing"] = c.line_spacing;
    j["sensing_range"] = optional_number(c.sensing_range.limit());
    j["k"] = c.k;
    j["b"] = c.b;
    j["dt"] = c.dt;
    j["leader_force"] = c.leader_force;
    j["max_speed"] = optional_number(c.max_speed);
    j["max_steps"] = c.max_steps;
    j["v_tol"] = c.v_tol;
    j["window"] = c.window;
    j["topology_refresh_every"] = c.topology_refresh_every;
    j["reciprocal_links"] = c.reciprocal_links;
    j["sample_every"] = c.sample_every;
    j["pair_close_factor"] = c.pair_close_factor;
    j["chain_residual_fraction"] = c.chain_residual_fraction;
    j["output"] = {{"dir", c.output.dir}, {"trajectory", c.output.trajectory}, {"metrics", c.output.metrics}};
    return j;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config", path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

void write_trajectory(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "step,agent_id,x,y,vx,vy\n";
    for (std::size_t f = 0; f < result.frames.size(); ++f) {
        const long step = result.metrics_series[f].step;
        for (const auto& a : result.frames[f].agents) {
            out << step << ',' << a.id << ',' << fmt9(a.position.x) << ',' << fmt9(a.position.y) << ','
                << fmt9(a.velocity.x) << ',' << fmt9(a.velocity.y) << '\n';
        }
    }
    finish(out, path);
}

json metrics_to_json(const RunResult& r) {
    json series = json::array();
    for (const auto& m : r.metrics_series) {
        series.push_back({{"step", m.step},
                          {"max_speed", m.max_speed},
                          {"mean_abs_error", optional_number(m.mean_abs_error)},
                          {"eigen_ratio", m.eigen_ratio},
                          {"component_count", m.component_count},
                          {"phase_label", m.phase_label}});
    }
    json j;
    j["config"] = config_to_json(r.config);
    j["summary"] = {{"converged", r.summary.converged},
                    {"steps", r.summary.steps},
                    {"final_mean_abs_error", optional_number(r.summary.final_mean_abs_error)},
                    {"final_eigen_ratio", r.summary.final_eigen_ratio},
                    {"final_component_count", r.summary.final_component_count},
                    {"final_phase", r.summary.final_phase}};
    j["series"] = std::move(series);
    return j;
}

void write_metrics(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << metrics_to_json(result).dump(2) << '\n';
    finish(out, path);
}

std::vector<TrajectoryRow> read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trajectory", path.string());
    std::string line;
    std::getline(in, line);
    if (line != "step,agent_id,x,y,vx,vy") throw IoError("unexpected trajectory header", path.string());
    std::vector<TrajectoryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        TrajectoryRow r;
        char c1, c2, c3, c4, c5;
        ss >> r.step >> c1 >> r.agent_id >> c2 >> r.position.x >> c3 >> r.position.y >> c4 >>
            r.velocity.x >> c5 >> r.velocity.y;
        if (!ss) throw IoError("malformed trajectory row '" + line + "'", path.string());
        rows.push_back(r);
    }
    return rows;
}

}  // namespace swarmform
