#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "netiv/solver_types.hpp"

namespace netiv {

// Smallest k_t >= 0 with lcc * d(d-1) / ((d+k_t)(d+k_t-1)) <= level.
// Closed-form start plus a scan fix-up so the boundary cases agree exactly
// with a linear scan of the same predicate.
std::uint64_t required_edges(double lcc, std::uint64_t degree, double level);

struct TargetRequirement {
    double lcc = 0.0;
    std::uint64_t degree = 0;
    double omega_d = 0.0;  // resolved per target; <= degree means no deficit
};

struct EdgeBudgetBound {
    std::vector<double> per_target_need;  // max{k_t, omega_d - d}
    std::vector<std::uint64_t> per_target_edges;  // k_t alone
    double k_lower_bound = 0.0;           // 0.5 * sum of needs (may be half-integral)
};

EdgeBudgetBound lower_bound_k_G(const std::vector<TargetRequirement>& targets, double level);
EdgeBudgetBound lower_bound_k_G(const Graph& g, const std::vector<NodeId>& targets, double level,
                                const SolverConfig& config);

struct LccGrid {
    std::vector<double> levels;   // strictly ascending
    std::uint64_t d_hat_2k = 0;   // max degree among the top-2k-LCC targets
};

// Levels j / C(d_hat_2k, 2) for j = 1, 2, ... through the first level at or
// above the largest initial target LCC. Degenerate d_hat_2k < 2 collapses to
// the single level 1.
LccGrid lcc_grid(const Graph& g, const std::vector<NodeId>& targets, std::size_t k);

struct OptionSet {
    NodeId owner = 0;
    std::vector<NodeId> options;  // U_t, sorted by id
    std::size_t optionality() const { return options.size(); }
};

// Targets reachable only at hop distance >= 3 (or unreachable) join
// unconditionally; distance-2 targets join when the prospective edge keeps
// every common neighbor within original LCC + tau. Neighbors of t and t
// itself never join.
OptionSet optionality(const Graph& working, NodeId t, const std::vector<NodeId>& targets, double tau,
                      const std::vector<LccValue>& original_lcc);
OptionSet optionality(const Graph& g, NodeId t, const std::vector<NodeId>& targets, double tau);

// Largest LCC reachable for a node of the given original triangle pairs and
// degree after any k additional edges: max over k1 + k2 = k of
// (n_v + k2 + k1*d + C(k1,2)) / C(d+k1, 2), kept as an exact rational.
struct LccUpperBound {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
    double clamped() const { return value() > 1.0 ? 1.0 : value(); }
};

LccUpperBound lcc_upper_bound(std::uint64_t triangles, std::uint64_t degree, std::size_t k);

// Stop once some target can no longer receive the edges its level demands:
// k - |F| + x_t < need_t for any t.
bool early_stop_check(std::size_t k, std::size_t edges_placed, const std::vector<std::size_t>& edges_at_target,
                      const std::vector<double>& per_target_need);

// Working state for one grid level of the solver: the graph copy receiving
// edges, per-target bookkeeping, and the selection cache that the upper
// bound is allowed to leave stale.
struct PonfContext {
    const Graph* original = nullptr;
    std::vector<LccValue> original_lcc;
    CentralitySnapshot original_centrality;  // empty unless MISS can engage

    std::vector<NodeId> targets;  // sorted, unique
    Graph working;
    std::vector<Edge> edges;
    std::vector<std::size_t> edges_at_target;  // x_t, aligned with targets
    std::size_t budget = 0;

    // Selection cache: exact unless flagged stale (possible only with ALC).
    // Refreshing an entry recounts the node's neighborhood from adjacency,
    // which is the cost the bound exists to avoid.
    std::vector<double> cached_lcc;
    std::vector<bool> stale;
    std::vector<double> bound_full_budget;  // upper bound over the whole budget
    bool alc = true;

    CentralitySnapshot current_centrality;
    bool centrality_dirty = false;
    bool centrality_tracked = false;

    std::uint64_t recounts = 0;  // observability for the with/without-ALC ratio

    enum class StopReason { None, TargetsAtZero, OptionsExhausted };
    StopReason last_stop = StopReason::None;

    std::size_t target_index(NodeId t) const;
};

PonfContext make_ponf_context(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config);

// One PONF round: m is the largest-LCC target (ties: smallest optionality,
// then smallest id), u the best member of m's option set that also keeps the
// endpoints within the degradation bound. Empty when every tied m has no
// usable option.
std::optional<std::pair<NodeId, NodeId>> ponf_select(PonfContext& state, const SolverConfig& config);

// Applies (m, u) to the working copy and refreshes or staleness-marks the
// affected cache entries.
void ponf_apply(PonfContext& state, NodeId m, NodeId u);

InterventionPlan oisa(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config);

}  // namespace netiv
