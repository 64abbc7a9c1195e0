#pragma once

#include <vector>

#include "netiv/solver_types.hpp"

namespace netiv {

enum class BaselineKind { BUM, SIM, ENUM_S, ENUM_M, EA, TEA, GD };

// Connects the largest-LCC target to the largest-LCC node whose edge keeps
// every affected node within the degradation bound; MISS ordering takes over
// while the target sits below a centrality threshold.
InterventionPlan bum(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config,
                     bool restrict_to_targets = false);

// Same loop, but the partner is the node farthest from the target by hops
// (unreachable preferred over any finite distance).
InterventionPlan sim(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config,
                     bool restrict_to_targets = false);

struct EnumOptions {
    std::size_t subset_cap = 10'000'000;  // refuse instances beyond this many subsets
    bool exact_k = true;   // prefer exactly-k subsets, falling back to smaller sizes
                           // only when no k-subset is feasible; false enumerates all
                           // sizes <= k and takes the global optimum
    bool endpoints_in_targets_only = true;  // ENUM_M candidate edges stay inside T
};

// Exhaustive search over candidate edge subsets; the optimality oracle for
// small instances. Feasibility inside the search covers the degradation
// bound and the degree threshold; betweenness/closeness outcomes land in the
// audit like everywhere else.
InterventionPlan enum_s(const Graph& g, NodeId t, const SolverConfig& config, const EnumOptions& options = {});
InterventionPlan enum_m(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config,
                        const EnumOptions& options = {});

// Greedy closeness-sum maximizers: EA over every absent pair (capped to the
// top pairs by degree product when the universe is too large), TEA over
// pairs incident to a target, maximizing the targets' closeness sum.
InterventionPlan ea(const Graph& g, const SolverConfig& config, const std::vector<NodeId>& report_targets = {},
                    std::size_t pair_cap = 100'000);
InterventionPlan tea(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config);

// Greedy influence maximizer: adds the edge with the largest increase of the
// targets' summed PageRank scores.
InterventionPlan gd(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config);

}  // namespace netiv
