#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netiv/centrality.hpp"
#include "netiv/graph.hpp"

namespace netiv {

struct NodeMetrics {
    double lcc = 0.0;
    double degree = 0.0;
    double betweenness = 0.0;
    double closeness = 0.0;
};

enum class MissMode { Adaptive, Static };

struct MissWeights {
    double w_b = 0.0;
    double w_c = 0.0;
};

// Centrality lower bounds are strict (value must exceed the threshold); a
// threshold of exactly 0 disables the check, since the measures are
// non-negative and a zero bound is used throughout to mean "unconstrained".
struct SolverConfig {
    std::size_t k = 1;
    double tau = 0.12;
    double omega_b = 0.0;
    double omega_c = 0.0;
    std::optional<double> omega_d;  // unset: per-target default d_G(t) + 1
    MissMode miss_mode = MissMode::Adaptive;
    double static_w_b = 0.33;
    double static_w_c = 0.33;
    std::uint64_t seed = 0;
    CentralityMode centrality_mode = CentralityMode::exact();
    bool alc_enabled = true;  // OISA bookkeeping switch; never changes output

    void validate() const;
    double omega_d_for(const Graph& g, NodeId target) const;
};

// Adaptive weights from the target's deficit below each threshold, halved so
// that w_b + w_c <= 1 with the remainder on degree. Static mode returns the
// configured constants.
MissWeights miss_weights(const NodeMetrics& target, double omega_b, double omega_c,
                         MissMode mode = MissMode::Adaptive, double static_w_b = 0.0, double static_w_c = 0.0);

// w_b*b + w_c*c + (1 - w_b - w_c)*d over pool-normalized metrics.
double miss_score(const NodeMetrics& candidate, const MissWeights& weights);

// Min-max normalization of lcc/degree/betweenness/closeness over a candidate
// pool; a constant field normalizes to 0 for every candidate.
std::vector<NodeMetrics> normalize_pool(const std::vector<NodeMetrics>& pool);

struct Violation {
    enum class Kind { TauIncrement, Betweenness, Closeness, Degree };
    Kind kind = Kind::TauIncrement;
    NodeId node = 0;
    double amount = 0.0;  // how far past the constraint

    static const char* kind_name(Kind k);
};

struct LevelDiagnostic {
    double level = 0.0;
    double k_lower_bound = 0.0;
    bool pruned = false;
    std::size_t edges = 0;
    double realized_max_lcc = 0.0;
    std::string stop_cause;
};

struct InterventionPlan {
    std::vector<Edge> edges;
    std::vector<NodeId> targets;
    std::vector<NodeMetrics> before;  // aligned with targets
    std::vector<NodeMetrics> after;
    double objective_before = 0.0;  // max target LCC before intervention
    double objective_after = 0.0;   // max target LCC on the audited graph
    bool feasible = false;
    std::vector<Violation> violations;
    double selection_score = 0.0;  // aggregate MISS score of F
    std::vector<LevelDiagnostic> level_diagnostics;
    std::vector<std::string> notes;
};

// Per-node LCCs of the current graph, used as the fixed baseline that every
// degradation check measures against.
std::vector<LccValue> baseline_lcc(const Graph& g);

// True when adding (u, v) to `working` keeps every affected node within
// original LCC + tau. Pure; evaluates the what-if effect only.
bool edge_addition_within_tau(const Graph& working, const std::vector<LccValue>& original, NodeId u, NodeId v,
                              double tau);

// Fills the plan's audit block from scratch: rebuilds G+F, recounts every
// triangle by edge scan (no incremental caches), takes a fresh centrality
// snapshot under the config's frozen mode and checks all four constraints.
void audit_plan(const Graph& original, InterventionPlan& plan, const SolverConfig& config);

inline constexpr double kTauAuditSlack = 1e-12;

}  // namespace netiv
