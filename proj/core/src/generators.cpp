#include "netiv/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "netiv/rng.hpp"

namespace netiv {

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    Graph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (rng.next_double() < p) g.add_edge(u, v);
        }
    }
    return g;
}

namespace {

// Mutable scratch structure used by the calibrated generators. Tracks the
// average LCC incrementally so steering steps stay cheap.
struct Scratch {
    std::vector<std::set<NodeId>> adj;
    std::vector<std::uint64_t> tri;
    std::size_t edges = 0;
    double lcc_sum = 0.0;

    explicit Scratch(std::size_t n) : adj(n), tri(n, 0) {}

    double node_lcc(NodeId v) const {
        std::size_t d = adj[v].size();
        return d < 2 ? 0.0 : static_cast<double>(tri[v]) / (static_cast<double>(d) * (d - 1) / 2.0);
    }

    bool has_edge(NodeId u, NodeId v) const { return adj[u].count(v) != 0; }

    std::vector<NodeId> commons(NodeId u, NodeId v) const {
        std::vector<NodeId> out;
        const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
        const auto& b = adj[u].size() <= adj[v].size() ? adj[v] : adj[u];
        for (NodeId w : a) {
            if (b.count(w)) out.push_back(w);
        }
        return out;
    }

    void add(NodeId u, NodeId v) {
        auto touched = commons(u, v);
        touched.push_back(u);
        touched.push_back(v);
        for (NodeId w : touched) lcc_sum -= node_lcc(w);
        std::size_t shared = touched.size() - 2;
        adj[u].insert(v);
        adj[v].insert(u);
        tri[u] += shared;
        tri[v] += shared;
        for (std::size_t i = 0; i + 2 < touched.size(); ++i) ++tri[touched[i]];
        ++edges;
        for (NodeId w : touched) lcc_sum += node_lcc(w);
    }

    void remove(NodeId u, NodeId v) {
        auto touched = commons(u, v);
        touched.push_back(u);
        touched.push_back(v);
        for (NodeId w : touched) lcc_sum -= node_lcc(w);
        std::size_t shared = touched.size() - 2;
        adj[u].erase(v);
        adj[v].erase(u);
        tri[u] -= shared;
        tri[v] -= shared;
        for (std::size_t i = 0; i + 2 < touched.size(); ++i) --tri[touched[i]];
        --edges;
        for (NodeId w : touched) lcc_sum += node_lcc(w);
    }

    double avg_lcc() const { return lcc_sum / static_cast<double>(adj.size()); }

    Graph build() const {
        Graph g(adj.size());
        for (NodeId u = 0; u < adj.size(); ++u) {
            for (NodeId v : adj[u]) {
                if (v > u) g.add_edge(u, v);
            }
        }
        return g;
    }
};

// Connect two non-adjacent neighbors of a random wedge center; raises LCC.
// Low-degree centers first: closing their wedges moves the average most.
bool close_wedge(Scratch& s, Rng& rng, NodeId lo, NodeId hi) {
    for (int attempt = 0; attempt < 96; ++attempt) {
        NodeId w = lo + static_cast<NodeId>(rng.next_below(hi - lo));
        if (s.adj[w].size() < 2) continue;
        if (attempt < 48 && s.adj[w].size() > 4) continue;
        std::vector<NodeId> nb(s.adj[w].begin(), s.adj[w].end());
        NodeId a = nb[rng.next_below(nb.size())];
        NodeId b = nb[rng.next_below(nb.size())];
        if (a == b || s.has_edge(a, b)) continue;
        s.add(a, b);
        return true;
    }
    return false;
}

bool add_random_pair(Scratch& s, Rng& rng, NodeId lo, NodeId hi) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        NodeId a = lo + static_cast<NodeId>(rng.next_below(hi - lo));
        NodeId b = lo + static_cast<NodeId>(rng.next_below(hi - lo));
        if (a == b || s.has_edge(a, b)) continue;
        s.add(a, b);
        return true;
    }
    return false;
}

}  // namespace

Graph collab_like(const CollabParams& params, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t n = params.nodes;
    Scratch s(n);

    // Collaboration teams as cliques. Members come from a shuffled draw
    // order so every author lands in one team before collisions start
    // creating multi-team hubs; the pure-clique start overshoots the
    // clustering target and the remaining budget of single cross edges
    // steers down onto it.
    std::vector<NodeId> draw_order(n);
    for (NodeId i = 0; i < n; ++i) draw_order[i] = i;
    rng.shuffle(draw_order);
    std::size_t next_uncovered = 0;

    std::size_t clique_budget = params.edges * 97 / 100;
    while (next_uncovered < n && s.edges < clique_budget) {
        double r = rng.next_double();
        std::size_t size = r < 0.10 ? 2 : r < 0.45 ? 3 + rng.next_below(3) : r < 0.86 ? 6 + rng.next_below(3)
                                                                                      : 9 + rng.next_below(4);
        std::vector<NodeId> team;
        while (team.size() < size) {
            NodeId a = next_uncovered < n ? draw_order[next_uncovered++] : static_cast<NodeId>(rng.next_below(n));
            if (std::find(team.begin(), team.end(), a) == team.end()) team.push_back(a);
        }
        for (std::size_t i = 0; i < team.size(); ++i) {
            for (std::size_t j = i + 1; j < team.size(); ++j) {
                if (!s.has_edge(team[i], team[j])) s.add(team[i], team[j]);
            }
        }
    }

    while (s.edges < params.edges) {
        bool ok = s.avg_lcc() < params.target_avg_lcc
                      ? close_wedge(s, rng, 0, static_cast<NodeId>(n))
                      : add_random_pair(s, rng, 0, static_cast<NodeId>(n));
        if (!ok) add_random_pair(s, rng, 0, static_cast<NodeId>(n));
    }
    return s.build();
}

Graph classroom_like(const ClassroomParams& params, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t n = params.total_nodes;
    Scratch s(n);

    std::size_t per = params.nodes_per_component;
    std::size_t edges_per = params.total_edges / params.components;
    for (std::size_t c = 0; c < params.components; ++c) {
        NodeId lo = static_cast<NodeId>(c * per);
        NodeId hi = static_cast<NodeId>(c + 1 == params.components ? n : (c + 1) * per);
        std::size_t target = c + 1 == params.components ? params.total_edges - s.edges : edges_per;
        std::size_t before = s.edges;

        // Disjoint friend groups of 5-6 classmates, then a few bridges. This
        // starts clustered; the rewiring pass below settles on the target.
        NodeId next = lo;
        std::vector<NodeId> leaders;
        while (next < hi) {
            NodeId size = static_cast<NodeId>(std::min<std::size_t>(5 + rng.next_below(2), hi - next));
            for (NodeId i = next; i < next + size; ++i) {
                for (NodeId j = i + 1; j < next + size; ++j) s.add(i, j);
            }
            leaders.push_back(next);
            next += size;
        }
        for (std::size_t i = 1; i < leaders.size(); ++i) {
            if (!s.has_edge(leaders[i - 1], leaders[i])) s.add(leaders[i - 1], leaders[i]);
        }
        while (s.edges - before < target) {
            if (!add_random_pair(s, rng, lo, hi)) break;
        }
    }

    // Rewire toward the LCC target without changing the edge count: drop a
    // random edge, then close a wedge (too low) or add a random pair (too high).
    for (int step = 0; step < 4000; ++step) {
        double avg = s.avg_lcc();
        if (std::abs(avg - params.target_avg_lcc) <= params.lcc_tolerance) break;
        std::size_t comp = rng.next_below(params.components);
        NodeId lo = static_cast<NodeId>(comp * per);
        NodeId hi = static_cast<NodeId>(comp + 1 == params.components ? n : (comp + 1) * per);
        NodeId a = lo + static_cast<NodeId>(rng.next_below(hi - lo));
        if (s.adj[a].empty()) continue;
        std::vector<NodeId> nb(s.adj[a].begin(), s.adj[a].end());
        NodeId b = nb[rng.next_below(nb.size())];
        s.remove(a, b);
        bool ok = avg < params.target_avg_lcc ? close_wedge(s, rng, lo, hi) : add_random_pair(s, rng, lo, hi);
        if (!ok) s.add(a, b);
    }
    return s.build();
}

}  // namespace netiv
