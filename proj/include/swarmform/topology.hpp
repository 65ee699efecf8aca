#pragma once

// Control-topology construction. Every function here is a pure function of
// its arguments; ties are always broken by the smaller id (or id pair).

#include <optional>
#include <utility>
#include <vector>

#include "swarmform/dynamics.hpp"

namespace swarmform {

/// Two agents bound at a short rest length. `a < b` for a real pair;
/// a singleton node (an odd leftover agent) has `a == b`.
struct Pair {
    AgentId a{0};
    AgentId b{0};

    static Pair singleton(AgentId id) { return {id, id}; }
    bool is_singleton() const { return a == b; }
    std::vector<AgentId> members() const;

    bool operator==(const Pair&) const = default;
};

/// Undirected graph whose nodes are pairs. Each edge is stored once with
/// `first < second`.
struct PairGraph {
    std::vector<Pair> pairs;
    std::vector<std::pair<int, int>> edges;

    int degree(int node) const;
    std::vector<int> adjacent(int node) const;
    /// Connected components as lists of node indices, each ordered along
    /// the path starting from its lower-index end.
    std::vector<std::vector<int>> paths() const;
    /// Node holding `agent`, if any.
    std::optional<int> node_of(AgentId agent) const;
};

Vec2 centroid(const World& world, const Pair& pair);

/// Other agents within `range` of agent `i`, sorted by (distance, id).
std::vector<AgentId> neighbors_within_range(const World& world, AgentId i, SensingRange range);

/// First min(k, available) entries of neighbors_within_range.
std::vector<AgentId> k_nearest(const World& world, AgentId i, int k, SensingRange range);

enum class LinkMode {
    /// Only the selecting agent feels the spring.
    Directed,
    /// A selection by either end creates the spring in both directions.
    Reciprocal,
};

/// Springs from every agent to each of its k nearest neighbors at
/// `desired_distance`. Links are ordered by (from, to).
LinkSet dispersion_links(const World& world, double desired_distance, int k, SensingRange range,
                         const Gains& gains, LinkMode mode = LinkMode::Reciprocal);

/// Globally greedy matching: closest unmatched in-range pair first.
/// Agents that cannot be matched are left out.
std::vector<Pair> greedy_pairing(const World& world, SensingRange range);

/// Chains the pairs into a forest of paths. Candidate edges are every
/// in-range centroid pair; they are inserted shortest first (ties by node
/// pair), skipping any that would give a node degree 3 or close a cycle.
/// Each pair's nearest-pair edge is therefore tried before any longer
/// edge touching it.
PairGraph pair_graph(const World& world, const std::vector<Pair>& pairs,
                     SensingRange range = SensingRange::unlimited());

/// Intra-pair links at `epsilon` plus all member-to-member cross links
/// along every graph edge at `spacing`, both directions.
LinkSet line_links(const World& world, const PairGraph& graph, double epsilon, double spacing,
                   const Gains& gains);

/// Leader agents at the two ends of the chain, or nullopt unless the graph
/// is one path of at least two nodes. At each end the leader is the member
/// farther from the adjacent node's centroid.
std::optional<std::pair<AgentId, AgentId>> chain_endpoints(const World& world,
                                                           const PairGraph& graph);

/// Components of the proximity graph at `range`, each sorted, ordered by
/// smallest member.
std::vector<std::vector<AgentId>> connected_components(const World& world, double range);

}  // namespace swarmform
