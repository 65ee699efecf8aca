#include "swarmform/topology.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace swarmform {

namespace {

struct Candidate {
    double dist;
    AgentId id;

    bool operator<(const Candidate& o) const { return std::tie(dist, id) < std::tie(o.dist, o.id); }
};

std::vector<Candidate> candidates(const World& world, AgentId i, SensingRange range) {
    std::vector<Candidate> out;
    out.reserve(world.size());
    const Vec2 p = world[i].position;
    for (const auto& a : world.agents) {
        if (a.id == i) continue;
        const double d = distance(p, a.position);
        if (range.contains(d)) out.push_back({d, a.id});
    }
    return out;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

struct WeightedEdge {
    double dist;
    int u;
    int v;

    bool operator<(const WeightedEdge& o) const { return std::tie(dist, u, v) < std::tie(o.dist, o.u, o.v); }
};

}  // namespace

std::vector<AgentId> Pair::members() const {
    if (is_singleton()) return {a};
    return {a, b};
}

int PairGraph::degree(int node) const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [node](const auto& e) {
        return e.first == node || e.second == node;
    }));
}

std::vector<int> PairGraph::adjacent(int node) const {
    std::vector<int> out;
    for (const auto& [u, v] : edges) {
        if (u == node) out.push_back(v);
        if (v == node) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> PairGraph::paths() const {
    const int n = static_cast<int>(pairs.size());
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> out;
    // Walk from every end node (degree <= 1) first; anything left over
    // would be a cycle, which pair_graph never produces.
    for (int start = 0; start < n; ++start) {
        if (seen[start] || degree(start) > 1) continue;
        std::vector<int> path;
        int prev = -1;
        int cur = start;
        while (cur >= 0) {
            seen[cur] = true;
            path.push_back(cur);
            int next = -1;
            for (int nb : adjacent(cur)) {
                if (nb != prev && !seen[nb]) next = nb;
            }
            prev = cur;
            cur = next;
        }
        out.push_back(std::move(path));
    }
    for (int start = 0; start < n; ++start) {
        if (!seen[start]) {
            std::vector<int> cycle;
            std::vector<int> stack{start};
            while (!stack.empty()) {
                int c = stack.back();
                stack.pop_back();
                if (seen[c]) continue;
                seen[c] = true;
                cycle.push_back(c);
                for (int nb : adjacent(c)) stack.push_back(nb);
            }
            out.push_back(std::move(cycle));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    return out;
}

std::optional<int> PairGraph::node_of(AgentId agent) const {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].a == agent || pairs[i].b == agent) return static_cast<int>(i);
    }
    return std::nullopt;
}

Vec2 centroid(const World& world, const Pair& pair) {
    return (world[pair.a].position + world[pair.b].position) * 0.5;
}

std::vector<AgentId> neighbors_within_range(const World& world, AgentId i, SensingRange range) {
    auto c = candidates(world, i, range);
    std::sort(c.begin(), c.end());
    std::vector<AgentId> out;
    out.reserve(c.size());
    for (const auto& x : c) out.push_back(x.id);
    return out;
}

std::vector<AgentId> k_nearest(const World& world, AgentId i, int k, SensingRange range) {
    auto c = candidates(world, i, range);
    const auto keep = std::min(c.size(), static_cast<std::size_t>(std::max(k, 0)));
    std::partial_sort(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(keep), c.end());
    std::vector<AgentId> out;
    out.reserve(keep);
    for (std::size_t j = 0; j < keep; ++j) out.push_back(c[j].id);
    return out;
}

LinkSet dispersion_links(const World& world, double desired_distance, int k, SensingRange range,
                         const Gains& gains, LinkMode mode) {
    std::vector<std::vector<AgentId>> targets(world.size());
    for (const auto& a : world.agents) {
        for (AgentId j : k_nearest(world, a.id, k, range)) {
            targets[a.id].push_back(j);
            if (mode == LinkMode::Reciprocal) targets[j].push_back(a.id);
        }
    }
    LinkSet out;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        auto& t = targets[i];
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        for (AgentId j : t) out.add({static_cast<AgentId>(i), j, desired_distance, gains.k, gains.b});
    }
    return out;
}

std::vector<Pair> greedy_pairing(const World& world, SensingRange range) {
    std::vector<WeightedEdge> all;
    const int n = static_cast<int>(world.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(world[i].position, world[j].position);
            if (range.contains(d)) all.push_back({d, i, j});
        }
    }
    std::sort(all.begin(), all.end());
    std::vector<bool> matched(world.size(), false);
    std::vector<Pair> out;
    for (const auto& e : all) {
        if (matched[e.u] || matched[e.v]) continue;
        matched[e.u] = matched[e.v] = true;
        out.push_back({e.u, e.v});
    }
    return out;
}

PairGraph pair_graph(const World& world, const std::vector<Pair>& pairs, SensingRange range) {
    PairGraph g;
    g.pairs = pairs;
    const int n = static_cast<int>(pairs.size());
    std::vector<Vec2> c;
    c.reserve(pairs.size());
    for (const auto& p : pairs) c.push_back(centroid(world, p));

    std::vector<WeightedEdge> all;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(c[i], c[j]);
            if (range.contains(d)) all.push_back({d, i, j});
        }
    }
    std::sort(all.begin(), all.end());

    std::vector<int> deg(pairs.size(), 0);
    DisjointSets sets(pairs.size());
    for (const auto& e : all) {
        if (deg[e.u] >= 2 || deg[e.v] >= 2) continue;
        if (!sets.unite(e.u, e.v)) continue;
        ++deg[e.u];
        ++deg[e.v];
        g.edges.emplace_back(e.u, e.v);
    }
    return g;
}

LinkSet line_links(const World& world, const PairGraph& graph, double epsilon, double spacing,
                   const Gains& gains) {
    (void)world;
    LinkSet out;
    for (const auto& p : graph.pairs) {
        if (p.is_singleton()) continue;
        out.add({p.a, p.b, epsilon, gains.k, gains.b});
        out.add({p.b, p.a, epsilon, gains.k, gains.b});
    }
    for (const auto& [u, v] : graph.edges) {
        for (AgentId i : graph.pairs[u].members()) {
            for (AgentId j : graph.pairs[v].members()) {
                out.add({i, j, spacing, gains.k, gains.b});
                out.add({j, i, spacing, gains.k, gains.b});
            }
        }
    }
    return out;
}

std::optional<std::pair<AgentId, AgentId>> chain_endpoints(const World& world,
                                                           const PairGraph& graph) {
    if (graph.pairs.size() < 2) return std::nullopt;
    const auto components = graph.paths();
    if (components.size() != 1 || graph.edges.size() + 1 != graph.pairs.size()) return std::nullopt;
    const auto& path = components.front();

    auto leader_at = [&](int end, int inner) {
        const Pair& p = graph.pairs[end];
        const Vec2 ref = centroid(world, graph.pairs[inner]);
        const double da = distance(world[p.a].position, ref);
        const double db = distance(world[p.b].position, ref);
        if (db > da) return p.b;
        if (da > db) return p.a;
        return std::min(p.a, p.b);
    };
    return std::make_pair(leader_at(path.front(), path[1]),
                          leader_at(path.back(), path[path.size() - 2]));
}

std::vector<std::vector<AgentId>> connected_components(const World& world, double range) {
    const int n = static_cast<int>(world.size());
    DisjointSets sets(world.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (distance(world[i].position, world[j].position) <= range) sets.unite(i, j);
        }
    }
    std::vector<std::vector<AgentId>> out;
    std::vector<int> slot(world.size(), -1);
    for (int i = 0; i < n; ++i) {
        const int r = sets.find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

}  // namespace swarmform
