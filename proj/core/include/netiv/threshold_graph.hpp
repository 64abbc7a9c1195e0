#pragma once

#include <cstdint>
#include <vector>

#include "netiv/graph.hpp"

namespace netiv {

// Node weights sorted ascending plus a threshold; the realized graph has an
// edge (i, j) exactly when f(i) + f(j) > threshold (strict, so boundary
// equality means non-edge).
struct ThresholdGraphSpec {
    std::vector<double> weights;
    double threshold = 0.0;
};

// Ascending-weight node ids split into the isolated prefix, the independent
// middle band and the clique suffix.
struct ThresholdPartition {
    std::size_t z = 0;  // V_Z = [0, z)
    std::size_t c = 0;  // V_D = [z, c), V_C = [c, n)
    std::vector<NodeId> isolated;
    std::vector<NodeId> independent;
    std::vector<NodeId> clique;
};

Graph realize(const ThresholdGraphSpec& spec);

// Computes the boundaries from the weights and verifies the structural
// properties (no edge at isolated nodes, independence inside the band,
// completeness inside the suffix) on the realized graph; a failed check
// throws std::logic_error since it would mean the construction is wrong.
ThresholdPartition partition(const ThresholdGraphSpec& spec);

// Weights uniform(0,1) sorted ascending, threshold uniform(0.5, 1.5).
ThresholdGraphSpec random_spec(std::size_t n, std::uint64_t seed);

struct CreationStep {
    NodeId node = 0;
    bool dominating = false;  // false: added isolated
};

struct ThresholdCheck {
    bool is_threshold = false;
    std::vector<CreationStep> sequence;  // creation order when is_threshold
};

// Recognizer: repeatedly strip a vertex that is isolated or dominating in
// the remaining graph; succeeds iff the graph is threshold. The reversed
// strip order is returned as the creation sequence witness.
ThresholdCheck is_threshold(const Graph& g);

}  // namespace netiv
