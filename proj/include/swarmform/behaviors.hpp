#pragma once

// Per-step controllers. Each returns the links and external forces that
// drive the next integrate_step.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swarmform/dynamics.hpp"
#include "swarmform/topology.hpp"

namespace swarmform {

struct ControlOutput {
    LinkSet links;
    ForceMap external_forces;
    std::string phase_label;
};

/// Leaderless dispersion: every agent springs to its three nearest
/// neighbors at `desired_distance`. Never emits external forces.
ControlOutput dispersion_controller(const World& world, double desired_distance, SensingRange range,
                                   const Gains& gains, LinkMode mode = LinkMode::Reciprocal);

enum class LinePhase { Pairing, Chaining, Stretching };

const char* to_string(LinePhase phase);

struct LineParams {
    double epsilon{0.5};
    double spacing{10.0};
    double leader_force{0.25};
    /// Pairing ends once every pair is within this multiple of epsilon.
    double pair_close_factor{2.0};
    /// Chaining ends once every cross link is within this fraction of spacing.
    double chain_residual_fraction{0.2};
    SensingRange range;
    Gains gains;
};

struct LineControllerState {
    LinePhase phase{LinePhase::Pairing};
    bool paired{false};
    std::vector<Pair> pairs;
    std::vector<AgentId> leftovers;
    std::optional<PairGraph> graph;
    std::optional<std::pair<AgentId, AgentId>> leaders;
};

/// Phased line formation. Pairs are matched once on the first call and the
/// chain is built once on entering Chaining; both stay frozen afterwards,
/// as do the leaders chosen on entering Stretching.
std::pair<ControlOutput, LineControllerState> line_controller(const World& world,
                                                              LineControllerState state,
                                                              const LineParams& params);

/// Constant-magnitude push on `leader`, pointing from the centroid of the
/// adjacent chain node toward the centroid of the leader's own node.
/// Zero when the centroids coincide or the leader is not a chain end.
Vec2 leader_stretch_force(const World& world, AgentId leader, const PairGraph& graph,
                          double magnitude);

/// Adds each leftover agent as a singleton node joined to the nearest
/// in-range chain end.
void attach_leftovers(const World& world, PairGraph& graph, const std::vector<AgentId>& leftovers,
                      SensingRange range);

}  // namespace swarmform
