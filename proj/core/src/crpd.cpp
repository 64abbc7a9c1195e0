#include "netiv/crpd.hpp"

#include <algorithm>
#include <limits>

namespace netiv {

CandidatePool feasible_candidates(const Graph& working, NodeId t, const std::vector<LccValue>& original_lcc,
                                  double tau) {
    CandidatePool pool;
    for (NodeId i = 0; i < working.node_count(); ++i) {
        if (i == t || working.has_edge(t, i)) continue;
        if (edge_addition_within_tau(working, original_lcc, t, i, tau)) pool.candidates.push_back(i);
    }
    return pool;
}

namespace {

struct TargetTracker {
    const Graph& working;
    NodeId t;
    const SolverConfig& config;
    CentralitySnapshot snapshot;
    bool deficits_possible;
    bool dirty = false;

    TargetTracker(const Graph& g, NodeId target, const SolverConfig& cfg, CentralitySnapshot initial)
        : working(g), t(target), config(cfg), snapshot(std::move(initial)) {
        deficits_possible = cfg.miss_mode == MissMode::Adaptive && (cfg.omega_b > 0.0 || cfg.omega_c > 0.0);
    }

    MissWeights weights() {
        if (dirty) {
            snapshot = centrality_snapshot(working, snapshot.mode);
            dirty = false;
        }
        NodeMetrics m{working.lcc(t).value(), static_cast<double>(working.degree(t)), snapshot.betweenness[t],
                      snapshot.closeness[t]};
        return miss_weights(m, config.omega_b, config.omega_c, config.miss_mode, config.static_w_b,
                            config.static_w_c);
    }

    void after_insert() {
        // Edges incident to t never lower its betweenness or closeness, so
        // once both thresholds are met the adaptive weights stay (0, 0) and
        // nothing downstream reads the snapshot again.
        if (!deficits_possible) return;
        if (!dirty && snapshot.betweenness[t] >= config.omega_b && snapshot.closeness[t] >= config.omega_c) return;
        dirty = true;
    }
};

NodeId pick_min_degree(const Graph& g, const std::vector<NodeId>& pool) {
    NodeId best = pool.front();
    for (NodeId c : pool) {
        if (g.degree(c) < g.degree(best) || (g.degree(c) == g.degree(best) && c < best)) best = c;
    }
    return best;
}

}  // namespace

BaselineResult crpd_baseline(const Graph& g, NodeId t, std::size_t k, const std::vector<Edge>& seed_edges,
                             const SolverConfig& config) {
    std::vector<LccValue> original_lcc = baseline_lcc(g);

    // Betweenness/closeness feed the selection only when some weight can be
    // nonzero; otherwise the scores reduce to normalized degree and the
    // snapshot is never read.
    bool need_centrality =
        (config.miss_mode == MissMode::Adaptive && (config.omega_b > 0.0 || config.omega_c > 0.0)) ||
        (config.miss_mode == MissMode::Static && (config.static_w_b > 0.0 || config.static_w_c > 0.0));
    CentralitySnapshot original_snapshot;
    original_snapshot.mode = config.centrality_mode;
    if (need_centrality) {
        original_snapshot = centrality_snapshot(g, config.centrality_mode);
    } else {
        original_snapshot.betweenness.assign(g.node_count(), 0.0);
        original_snapshot.closeness.assign(g.node_count(), 0.0);
    }

    Graph working = g;
    BaselineResult result;
    for (const Edge& e : seed_edges) {
        working.add_edge(e.u, e.v);
        result.edges.push_back(e);
    }

    TargetTracker tracker(working, t, config, original_snapshot);
    for (std::size_t i = 0; i < seed_edges.size(); ++i) tracker.after_insert();

    std::vector<NodeId> pool = feasible_candidates(working, t, original_lcc, config.tau).candidates;

    while (result.edges.size() < k && !pool.empty()) {
        MissWeights weights = tracker.weights();
        NodeId u;
        if (weights.w_b == 0.0 && weights.w_c == 0.0) {
            u = pick_min_degree(g, pool);
            // score still recorded for plan comparison
            std::vector<NodeMetrics> raw;
            raw.reserve(pool.size());
            for (NodeId c : pool) {
                raw.push_back({0.0, static_cast<double>(g.degree(c)), original_snapshot.betweenness[c],
                               original_snapshot.closeness[c]});
            }
            std::vector<NodeMetrics> normalized = normalize_pool(raw);
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (pool[i] == u) result.selection_score += miss_score(normalized[i], weights);
            }
        } else {
            std::vector<NodeMetrics> raw;
            raw.reserve(pool.size());
            for (NodeId c : pool) {
                raw.push_back({0.0, static_cast<double>(g.degree(c)), original_snapshot.betweenness[c],
                               original_snapshot.closeness[c]});
            }
            std::vector<NodeMetrics> normalized = normalize_pool(raw);
            std::size_t best = 0;
            double best_score = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pool.size(); ++i) {
                double s = miss_score(normalized[i], weights);
                if (s > best_score || (s == best_score && pool[i] < pool[best])) {
                    best = i;
                    best_score = s;
                }
            }
            u = pool[best];
            result.selection_score += best_score;
        }

        working.add_edge(t, u);
        result.edges.emplace_back(t, u);
        pool.erase(std::remove(pool.begin(), pool.end(), u), pool.end());
        tracker.after_insert();

        std::vector<NodeId> kept;
        kept.reserve(pool.size());
        for (NodeId i : pool) {
            if (edge_addition_within_tau(working, original_lcc, t, i, config.tau)) {
                kept.push_back(i);
            } else {
                result.removed.push_back({i, u});
            }
        }
        pool.swap(kept);
    }

    if (!result.removed.empty()) {
        result.has_removed = true;
        result.min_degree_removed = result.removed.front();
        for (const auto& r : result.removed) {
            auto d = g.degree(r.node);
            auto best = g.degree(result.min_degree_removed.node);
            if (d < best || (d == best && r.node < result.min_degree_removed.node)) result.min_degree_removed = r;
        }
    }
    return result;
}

namespace {

InterventionPlan finalize(const Graph& g, NodeId t, const SolverConfig& config, const BaselineResult& run) {
    InterventionPlan plan;
    plan.targets = {t};
    plan.edges = run.edges;
    std::sort(plan.edges.begin(), plan.edges.end());
    plan.selection_score = run.selection_score;
    audit_plan(g, plan, config);
    return plan;
}

// Exact target-LCC comparison for plan ranking.
LccValue final_target_lcc(const Graph& g, NodeId t, const InterventionPlan& plan) {
    Graph after = g;
    for (const Edge& e : plan.edges) after.add_edge(e.u, e.v);
    return after.lcc(t);
}

}  // namespace

InterventionPlan crpd(const Graph& g, NodeId t, const SolverConfig& config) {
    config.validate();
    if (!g.has_node(t)) throw std::out_of_range("crpd: unknown target node " + std::to_string(t));

    BaselineResult base = crpd_baseline(g, t, config.k, {}, config);
    if (!base.has_removed) {
        InterventionPlan only = finalize(g, t, config, base);
        only.notes.push_back("rnr: no pruned candidates, single pass");
        return only;
    }

    NodeId r_m = base.min_degree_removed.node;
    BaselineResult reseeded = crpd_baseline(g, t, config.k, {Edge(t, r_m)}, config);

    // Both runs respect the degradation bound by construction, so with the
    // centrality and degree thresholds disabled, feasibility cannot split
    // them and the expensive audit is needed for the winner only.
    bool feasibility_can_differ =
        config.omega_b > 0.0 || config.omega_c > 0.0 || config.omega_d.value_or(1.0) > 0.0;

    InterventionPlan base_shell;
    base_shell.edges = base.edges;
    InterventionPlan alt_shell;
    alt_shell.edges = reseeded.edges;
    LccValue base_lcc = final_target_lcc(g, t, base_shell);
    LccValue alt_lcc = final_target_lcc(g, t, alt_shell);

    bool take_alt = false;
    if (feasibility_can_differ) {
        InterventionPlan best = finalize(g, t, config, base);
        InterventionPlan alt = finalize(g, t, config, reseeded);
        if (alt.feasible != best.feasible) {
            take_alt = alt.feasible;
        } else if (!(alt_lcc == base_lcc)) {
            take_alt = alt_lcc < base_lcc;
        } else if (alt.selection_score != best.selection_score) {
            take_alt = alt.selection_score > best.selection_score;
        }
        if (take_alt) {
            alt.notes.push_back("rnr: reseeded with node " + std::to_string(r_m) + " replaced the baseline plan");
            return alt;
        }
        best.notes.push_back("rnr: reseed with node " + std::to_string(r_m) + " did not improve");
        return best;
    }

    if (!(alt_lcc == base_lcc)) {
        take_alt = alt_lcc < base_lcc;
    } else if (reseeded.selection_score != base.selection_score) {
        take_alt = reseeded.selection_score > base.selection_score;
    }
    InterventionPlan winner = finalize(g, t, config, take_alt ? reseeded : base);
    winner.notes.push_back(take_alt
                               ? "rnr: reseeded with node " + std::to_string(r_m) + " replaced the baseline plan"
                               : "rnr: reseed with node " + std::to_string(r_m) + " did not improve");
    return winner;
}

}  // namespace netiv
