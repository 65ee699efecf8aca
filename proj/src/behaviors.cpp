#include "swarmform/behaviors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swarmform {

namespace {

bool pairs_closed(const World& world, const std::vector<Pair>& pairs, double limit) {
    return std::all_of(pairs.begin(), pairs.end(), [&](const Pair& p) {
        return distance(world[p.a].position, world[p.b].position) <= limit;
    });
}

bool cross_links_settled(const World& world, const LinkSet& links, double spacing, double tol) {
    for (const auto& l : links.links) {
        if (l.rest_length != spacing) continue;
        const double d = distance(world[l.from].position, world[l.to].position);
        if (std::abs(d - spacing) > tol) return false;
    }
    return true;
}

}  // namespace

ControlOutput dispersion_controller(const World& world, double desired_distance, SensingRange range,
                                   const Gains& gains, LinkMode mode) {
    return {dispersion_links(world, desired_distance, 3, range, gains, mode), {}, "dispersion"};
}

const char* to_string(LinePhase phase) {
    switch (phase) {
        case LinePhase::Pairing: return "pairing";
        case LinePhase::Chaining: return "chaining";
        case LinePhase::Stretching: return "stretching";
    }
    return "unknown";
}

void attach_leftovers(const World& world, PairGraph& graph, const std::vector<AgentId>& leftovers,
                      SensingRange range) {
    for (AgentId id : leftovers) {
        const Vec2 p = world[id].position;
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int node = 0; node < static_cast<int>(graph.pairs.size()); ++node) {
            if (graph.degree(node) > 1) continue;
            const double d = distance(p, centroid(world, graph.pairs[node]));
            if (range.contains(d) && d < best_d) {
                best = node;
                best_d = d;
            }
        }
        graph.pairs.push_back(Pair::singleton(id));
        const int added = static_cast<int>(graph.pairs.size()) - 1;
        if (best >= 0) graph.edges.emplace_back(best, added);
    }
}

Vec2 leader_stretch_force(const World& world, AgentId leader, const PairGraph& graph,
                          double magnitude) {
    const auto node = graph.node_of(leader);
    if (!node) return {};
    const auto adj = graph.adjacent(*node);
    if (adj.size() != 1) return {};
    const Vec2 axis = centroid(world, graph.pairs[*node]) - centroid(world, graph.pairs[adj.front()]);
    const double len = axis.norm();
    if (len < kCoincidentTolerance) return {};
    return axis * (magnitude / len);
}

std::pair<ControlOutput, LineControllerState> line_controller(const World& world,
                                                              LineControllerState state,
                                                              const LineParams& params) {
    ControlOutput out;

    if (!state.paired) {
        state.pairs = greedy_pairing(world, params.range);
        std::vector<bool> used(world.size(), false);
        for (const auto& p : state.pairs) used[p.a] = used[p.b] = true;
        for (std::size_t i = 0; i < world.size(); ++i) {
            if (!used[i]) state.leftovers.push_back(static_cast<AgentId>(i));
        }
        state.paired = true;
    }

    // At most one phase advance per call.
    bool advanced = false;
    if (state.phase == LinePhase::Pairing &&
        pairs_closed(world, state.pairs, params.pair_close_factor * params.epsilon)) {
        PairGraph g = pair_graph(world, state.pairs, params.range);
        attach_leftovers(world, g, state.leftovers, params.range);
        state.graph = std::move(g);
        state.phase = LinePhase::Chaining;
        advanced = true;
    }

    if (state.phase == LinePhase::Pairing) {
        for (const auto& p : state.pairs) {
            out.links.add({p.a, p.b, params.epsilon, params.gains.k, params.gains.b});
            out.links.add({p.b, p.a, params.epsilon, params.gains.k, params.gains.b});
        }
        out.phase_label = to_string(LinePhase::Pairing);
        return {std::move(out), std::move(state)};
    }

    const PairGraph& graph = *state.graph;
    out.links = line_links(world, graph, params.epsilon, params.spacing, params.gains);

    if (state.phase == LinePhase::Chaining) {
        const auto ends = chain_endpoints(world, graph);
        if (!advanced && ends && cross_links_settled(world, out.links, params.spacing,
                                        params.chain_residual_fraction * params.spacing)) {
            state.leaders = ends;
            state.phase = LinePhase::Stretching;
        } else {
            const auto components = graph.paths().size();
            out.phase_label = to_string(LinePhase::Chaining);
            if (components > 1) {
                out.phase_label += ":components=" + std::to_string(components);
            } else if (graph.pairs.size() < 2) {
                out.phase_label += ":single-pair";
            }
            return {std::move(out), std::move(state)};
        }
    }

    for (AgentId leader : {state.leaders->first, state.leaders->second}) {
        const Vec2 f = leader_stretch_force(world, leader, graph, params.leader_force);
        if (f.x != 0.0 || f.y != 0.0) out.external_forces[leader] = f;
    }
    out.phase_label = to_string(LinePhase::Stretching);
    return {std::move(out), std::move(state)};
}

}  // namespace swarmform
