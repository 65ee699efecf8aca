#pragma once

// Virtual spring-damper model: pairwise forces and the unit-step
// semi-implicit integrator that advances a World by one tick.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "swarmform/vec2.hpp"

namespace swarmform {

using AgentId = int;

struct AgentState {
    AgentId id{0};
    Vec2 position;
    Vec2 velocity;
    double mass{1.0};
};

/// Directed control edge. The force it produces acts on `from` only.
struct SpringLink {
    AgentId from{0};
    AgentId to{0};
    double rest_length{0.0};
    double k{0.0};
    double b{0.0};

    bool operator==(const SpringLink&) const = default;
};

/// Per-step control topology. Link order is the reduction order of the
/// per-agent force sums, so it is part of the deterministic output.
struct LinkSet {
    std::vector<SpringLink> links;

    std::size_t size() const { return links.size(); }
    bool empty() const { return links.empty(); }
    void add(const SpringLink& l) { links.push_back(l); }
    /// Ids `to` of every link with `from == id`, in link order.
    std::vector<AgentId> neighbors_of(AgentId id) const;
};

struct World {
    std::vector<AgentState> agents;
    long time{0};

    std::size_t size() const { return agents.size(); }
    const AgentState& operator[](AgentId id) const { return agents[static_cast<std::size_t>(id)]; }
};

/// Maximum sensing distance; default-constructed means unlimited.
class SensingRange {
public:
    constexpr SensingRange() = default;
    explicit SensingRange(double limit);

    static constexpr SensingRange unlimited() { return {}; }

    bool is_unlimited() const { return !limit_.has_value(); }
    std::optional<double> limit() const { return limit_; }
    bool contains(double dist) const { return !limit_ || dist <= *limit_; }

    bool operator==(const SensingRange&) const = default;

private:
    std::optional<double> limit_;
};

struct Gains {
    double k{0.05};
    double b{0.15};
};

struct SimParams {
    double dt{1.0};
    SensingRange sensing_range;
    Gains gains;
    std::optional<double> max_speed;
};

using ForceMap = std::map<AgentId, Vec2>;

/// Separations below this are treated as coincident agents.
inline constexpr double kCoincidentTolerance = 1e-9;

/// Unit direction used to separate coincident agents `i` and `j`.
/// Derived from a hash of the unordered id pair, and antisymmetric:
/// coincident_direction(i, j) == -coincident_direction(j, i).
Vec2 coincident_direction(AgentId i, AgentId j);

/// Hookean displacement from rest length, (|x_ij| - L) * x_ij / |x_ij|
/// with x_ij = pos_i - pos_j. Coincident positions fall back to
/// coincident_direction(id_i, id_j).
Vec2 displacement_vector(const Vec2& pos_i, const Vec2& pos_j, double rest_length,
                         AgentId id_i = 0, AgentId id_j = 1);

/// -k d_ij - b (v_i - v_j) for the link's endpoints.
Vec2 pair_force(const SpringLink& link, const AgentState& state_i, const AgentState& state_j);

/// Sum of pair_force over links with `from == agent_id`, in link order.
Vec2 net_force(AgentId agent_id, const World& world, const LinkSet& links);

/// All net forces at once; element i equals net_force(i, world, links).
std::vector<Vec2> net_forces(const World& world, const LinkSet& links);

/// Advances one tick: v' = v + dt (F + F_ext) / m, x' = x + dt v'.
/// Forces come from the input world only. Throws DivergenceError naming
/// the first agent whose new state is non-finite.
World integrate_step(const World& world, const LinkSet& links, const SimParams& params,
                     const ForceMap& external_forces = {});

double kinetic_energy(const World& world);

/// Kinetic energy plus the elastic energy stored in every link.
double mechanical_energy(const World& world, const LinkSet& links);

double max_speed(const World& world);

}  // namespace swarmform
