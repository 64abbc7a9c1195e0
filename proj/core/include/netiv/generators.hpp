#pragma once

#include <cstdint>

#include "netiv/graph.hpp"

namespace netiv {

// Erdos-Renyi G(n, p), seeded and platform-independent.
Graph gnp(std::size_t n, double p, std::uint64_t seed);

struct CollabParams {
    std::size_t nodes = 23133;
    std::size_t edges = 93497;
    double target_avg_lcc = 0.63;
    double lcc_tolerance = 0.02;
};

// Co-authorship-style synthetic: overlapping author cliques (papers) with a
// heavy-tailed activity distribution, then single-edge steering until the
// edge budget is met and the average LCC sits near the target. Produces the
// clique-rich, high-clustering structure typical of collaboration networks.
Graph collab_like(const CollabParams& params, std::uint64_t seed);

struct ClassroomParams {
    std::size_t components = 10;
    std::size_t nodes_per_component = 23;  // last component absorbs the remainder
    std::size_t total_nodes = 226;
    std::size_t total_edges = 583;
    double target_avg_lcc = 0.71;
    double lcc_tolerance = 0.02;
};

// Small multi-component synthetic with dense friend groups per component,
// calibrated by rewiring toward the target average LCC. Clearly synthetic;
// intended as a stand-in where a real classroom census is unavailable.
Graph classroom_like(const ClassroomParams& params, std::uint64_t seed);

}  // namespace netiv
