#include "swarmform/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "swarmform/errors.hpp"

namespace swarmform {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<AgentId> LinkSet::neighbors_of(AgentId id) const {
    std::vector<AgentId> out;
    for (const auto& l : links) {
        if (l.from == id) out.push_back(l.to);
    }
    return out;
}

SensingRange::SensingRange(double limit) : limit_(limit) {
    if (!(limit > 0.0) || std::isnan(limit)) throw ConfigError("sensing range must be positive");
    if (std::isinf(limit)) limit_.reset();
}

Vec2 coincident_direction(AgentId i, AgentId j) {
    const auto lo = static_cast<std::uint32_t>(std::min(i, j));
    const auto hi = static_cast<std::uint32_t>(std::max(i, j));
    const std::uint64_t h = splitmix64((std::uint64_t{lo} << 32) | hi) >> 32;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(h) / 4294967296.0;
    const Vec2 u{std::cos(angle), std::sin(angle)};
    return i < j ? u : -u;
}

Vec2 displacement_vector(const Vec2& pos_i, const Vec2& pos_j, double rest_length,
                         AgentId id_i, AgentId id_j) {
    const Vec2 xij = pos_i - pos_j;
    const double len = xij.norm();
    if (len < kCoincidentTolerance) {
        return coincident_direction(id_i, id_j) * (len - rest_length);
    }
    return xij * ((len - rest_length) / len);
}

Vec2 pair_force(const SpringLink& link, const AgentState& state_i, const AgentState& state_j) {
    const Vec2 d = displacement_vector(state_i.position, state_j.position, link.rest_length,
                                       state_i.id, state_j.id);
    return -link.k * d - link.b * (state_i.velocity - state_j.velocity);
}

Vec2 net_force(AgentId agent_id, const World& world, const LinkSet& links) {
    Vec2 sum;
    for (const auto& l : links.links) {
        if (l.from == agent_id) sum += pair_force(l, world[l.from], world[l.to]);
    }
    return sum;
}

std::vector<Vec2> net_forces(const World& world, const LinkSet& links) {
    std::vector<Vec2> out(world.size());
    for (const auto& l : links.links) {
        out[static_cast<std::size_t>(l.from)] += pair_force(l, world[l.from], world[l.to]);
    }
    return out;
}

World integrate_step(const World& world, const LinkSet& links, const SimParams& params,
                     const ForceMap& external_forces) {
    const std::vector<Vec2> forces = net_forces(world, links);
    World next;
    next.time = world.time + 1;
    next.agents.reserve(world.size());
    for (std::size_t i = 0; i < world.size(); ++i) {
        const AgentState& cur = world.agents[i];
        Vec2 f = forces[i];
        if (auto it = external_forces.find(cur.id); it != external_forces.end()) f += it->second;

        AgentState s = cur;
        s.velocity = cur.velocity + f * (params.dt / cur.mass);
        if (params.max_speed) {
            const double speed = s.velocity.norm();
            if (speed > *params.max_speed) s.velocity *= *params.max_speed / speed;
        }
        s.position = cur.position + s.velocity * params.dt;
        if (!s.velocity.finite() || !s.position.finite()) {
            throw DivergenceError("numerical divergence at agent " + std::to_string(cur.id), cur.id,
                                  next.time);
        }
        next.agents.push_back(s);
    }
    return next;
}

double kinetic_energy(const World& world) {
    double e = 0.0;
    for (const auto& a : world.agents) e += 0.5 * a.mass * a.velocity.norm2();
    return e;
}

double mechanical_energy(const World& world, const LinkSet& links) {
    double e = kinetic_energy(world);
    for (const auto& l : links.links) {
        const double stretch = distance(world[l.from].position, world[l.to].position) - l.rest_length;
        e += 0.5 * l.k * stretch * stretch;
    }
    return e;
}

double max_speed(const World& world) {
    double m = 0.0;
    for (const auto& a : world.agents) m = std::max(m, a.velocity.norm());
    return m;
}

}  // namespace swarmform
