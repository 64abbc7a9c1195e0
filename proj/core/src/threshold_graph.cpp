#include "netiv/threshold_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "netiv/rng.hpp"

namespace netiv {

Graph realize(const ThresholdGraphSpec& spec) {
    std::size_t n = spec.weights.size();
    Graph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (spec.weights[i] + spec.weights[j] > spec.threshold) g.add_edge(i, j);
        }
    }
    return g;
}

ThresholdPartition partition(const ThresholdGraphSpec& spec) {
    const auto& f = spec.weights;
    std::size_t n = f.size();
    if (!std::is_sorted(f.begin(), f.end())) {
        throw std::invalid_argument("threshold spec weights must be sorted ascending");
    }

    ThresholdPartition part;
    if (n == 0) return part;

    // Largest prefix whose members do not even reach the heaviest node.
    std::size_t z = 0;
    while (z + 1 < n && f[z] + f[n - 1] <= spec.threshold) ++z;

    // Last consecutive non-adjacent pair marks the end of the independent
    // band; everything after it is pairwise adjacent.
    std::size_t c = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (f[i] + f[i + 1] <= spec.threshold) c = i + 2;
    }
    if (c < z) c = z;

    part.z = z;
    part.c = c;
    for (NodeId v = 0; v < z; ++v) part.isolated.push_back(v);
    for (NodeId v = static_cast<NodeId>(z); v < c; ++v) part.independent.push_back(v);
    for (NodeId v = static_cast<NodeId>(c); v < n; ++v) part.clique.push_back(v);

    Graph g = realize(spec);
    for (NodeId v : part.isolated) {
        if (g.degree(v) != 0) throw std::logic_error("threshold partition: isolated node has an edge");
    }
    for (std::size_t i = 0; i < part.independent.size(); ++i) {
        for (std::size_t j = i + 1; j < part.independent.size(); ++j) {
            if (g.has_edge(part.independent[i], part.independent[j])) {
                throw std::logic_error("threshold partition: edge inside the independent band");
            }
        }
    }
    for (std::size_t i = 0; i < part.clique.size(); ++i) {
        for (std::size_t j = i + 1; j < part.clique.size(); ++j) {
            if (!g.has_edge(part.clique[i], part.clique[j])) {
                throw std::logic_error("threshold partition: missing edge inside the clique suffix");
            }
        }
    }
    return part;
}

ThresholdGraphSpec random_spec(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random threshold spec needs n >= 2");
    Rng rng(seed);
    ThresholdGraphSpec spec;
    spec.weights.resize(n);
    for (auto& w : spec.weights) w = rng.next_double();
    std::sort(spec.weights.begin(), spec.weights.end());
    spec.threshold = rng.next_double(0.5, 1.5);
    return spec;
}

ThresholdCheck is_threshold(const Graph& g) {
    std::size_t n = g.node_count();
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> deg(n);
    for (NodeId v = 0; v < n; ++v) deg[v] = g.degree(v);

    ThresholdCheck out;
    std::vector<CreationStep> strip_order;
    std::size_t remaining = n;
    while (remaining > 0) {
        NodeId pick = 0;
        bool found = false, dominating = false;
        for (NodeId v = 0; v < n && !found; ++v) {
            if (!alive[v]) continue;
            if (deg[v] == 0) {
                pick = v;
                found = true;
                dominating = false;
            } else if (deg[v] == remaining - 1) {
                pick = v;
                found = true;
                dominating = true;
            }
        }
        if (!found) return out;  // stuck: not a threshold graph
        strip_order.push_back({pick, dominating});
        alive[pick] = false;
        --remaining;
        for (NodeId w : g.neighbors(pick)) {
            if (alive[w]) --deg[w];
        }
    }
    out.is_threshold = true;
    out.sequence.assign(strip_order.rbegin(), strip_order.rend());
    return out;
}

}  // namespace netiv
