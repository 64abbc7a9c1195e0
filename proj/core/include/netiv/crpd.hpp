#pragma once

#include <vector>

#include "netiv/solver_types.hpp"

namespace netiv {

struct CandidatePool {
    std::vector<NodeId> candidates;  // C, sorted by id
    struct Removed {
        NodeId node = 0;   // moved out of C
        NodeId cause = 0;  // the accepted neighbor whose insertion disqualified it
    };
    std::vector<Removed> removed;  // R, in removal order
};

// All non-neighbors i of t whose insertion (t, i) into the working graph
// keeps every affected node's LCC within original + tau. `original_lcc` is
// the pre-intervention baseline the degradation constraint measures against;
// the working graph may already contain earlier intervention edges.
CandidatePool feasible_candidates(const Graph& working, NodeId t, const std::vector<LccValue>& original_lcc,
                                  double tau);

// Greedy loop: pick the minimum-degree candidate while the adaptive MISS
// weights are zero, otherwise the best MISS score over the pool; after each
// accepted edge, prune candidates that now break the degradation bound into
// R. Stops when k edges are placed or the pool empties.
struct BaselineResult {
    std::vector<Edge> edges;
    CandidatePool::Removed min_degree_removed;  // valid when has_removed
    bool has_removed = false;
    std::vector<CandidatePool::Removed> removed;
    double selection_score = 0.0;
};

BaselineResult crpd_baseline(const Graph& g, NodeId t, std::size_t k, const std::vector<Edge>& seed_edges,
                             const SolverConfig& config);

// Full solver: baseline run, then one re-selection seeded with the minimum
// degree node that the baseline pruned; returns the better audited plan
// (feasibility, then lower target LCC, then higher aggregate MISS score,
// then the unseeded run).
InterventionPlan crpd(const Graph& g, NodeId t, const SolverConfig& config);

}  // namespace netiv
