#include "netiv/solver_types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netiv {

void SolverConfig::validate() const {
    if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
    if (omega_b < 0.0 || omega_c < 0.0) throw std::invalid_argument("centrality thresholds must be >= 0");
    if (miss_mode == MissMode::Static) {
        if (static_w_b < 0.0 || static_w_c < 0.0 || static_w_b + static_w_c > 1.0 + 1e-12) {
            throw std::invalid_argument("static MISS weights need w_b, w_c >= 0 and w_b + w_c <= 1");
        }
    }
    if (!centrality_mode.is_exact() && centrality_mode.sample_count < 1) {
        throw std::invalid_argument("sampled centrality requires sample_count >= 1");
    }
}

double SolverConfig::omega_d_for(const Graph& g, NodeId target) const {
    if (omega_d.has_value()) return *omega_d;
    return static_cast<double>(g.degree(target)) + 1.0;
}

MissWeights miss_weights(const NodeMetrics& target, double omega_b, double omega_c, MissMode mode,
                         double static_w_b, double static_w_c) {
    if (mode == MissMode::Static) return {static_w_b, static_w_c};
    auto deficit = [](double value, double bound) {
        if (bound <= 0.0) return 0.0;  // unconstrained, nothing to repair
        if (value >= bound) return 0.0;
        return std::clamp((bound - value) / bound, 0.0, 1.0);
    };
    return {deficit(target.betweenness, omega_b) / 2.0, deficit(target.closeness, omega_c) / 2.0};
}

double miss_score(const NodeMetrics& candidate, const MissWeights& weights) {
    return weights.w_b * candidate.betweenness + weights.w_c * candidate.closeness +
           (1.0 - weights.w_b - weights.w_c) * candidate.degree;
}

std::vector<NodeMetrics> normalize_pool(const std::vector<NodeMetrics>& pool) {
    std::vector<NodeMetrics> out = pool;
    auto scale = [&](double NodeMetrics::*field) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& m : pool) {
            lo = std::min(lo, m.*field);
            hi = std::max(hi, m.*field);
        }
        for (auto& m : out) {
            m.*field = hi > lo ? (m.*field - lo) / (hi - lo) : 0.0;
        }
    };
    if (!pool.empty()) {
        scale(&NodeMetrics::lcc);
        scale(&NodeMetrics::degree);
        scale(&NodeMetrics::betweenness);
        scale(&NodeMetrics::closeness);
    }
    return out;
}

const char* Violation::kind_name(Kind k) {
    switch (k) {
        case Kind::TauIncrement: return "tau_increment";
        case Kind::Betweenness: return "betweenness";
        case Kind::Closeness: return "closeness";
        case Kind::Degree: return "degree";
    }
    return "?";
}

std::vector<LccValue> baseline_lcc(const Graph& g) {
    std::vector<LccValue> out(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) out[v] = g.lcc(v);
    return out;
}

bool edge_addition_within_tau(const Graph& working, const std::vector<LccValue>& original, NodeId u, NodeId v,
                              double tau) {
    EdgeAdditionEffect effect = working.lcc_if_added(u, v);
    for (const auto& entry : effect.changed) {
        if (!lcc_increment_within(original[entry.node], entry.after, tau)) return false;
    }
    return true;
}

void audit_plan(const Graph& original, InterventionPlan& plan, const SolverConfig& config) {
    Graph after = original;
    for (const Edge& e : plan.edges) after.add_edge(e.u, e.v);

    // Independent LCC route: edge-scan recount, not the incremental cache.
    std::vector<std::uint64_t> tri_before = original.compute_all_triangle_counts();
    std::vector<std::uint64_t> tri_after = after.compute_all_triangle_counts();

    plan.violations.clear();
    for (NodeId v = 0; v < original.node_count(); ++v) {
        double before = LccValue{tri_before[v], pairs_of(original.degree(v))}.value();
        double now = LccValue{tri_after[v], pairs_of(after.degree(v))}.value();
        if (now - before > config.tau + kTauAuditSlack) {
            plan.violations.push_back({Violation::Kind::TauIncrement, v, now - before - config.tau});
        }
    }

    CentralitySnapshot before_snap = centrality_snapshot(original, config.centrality_mode);
    CentralitySnapshot after_snap = centrality_snapshot(after, config.centrality_mode);

    plan.before.clear();
    plan.after.clear();
    double obj_before = 0.0, obj_after = 0.0;
    for (NodeId t : plan.targets) {
        NodeMetrics b{LccValue{tri_before[t], pairs_of(original.degree(t))}.value(),
                      static_cast<double>(original.degree(t)), before_snap.betweenness[t], before_snap.closeness[t]};
        NodeMetrics a{LccValue{tri_after[t], pairs_of(after.degree(t))}.value(), static_cast<double>(after.degree(t)),
                      after_snap.betweenness[t], after_snap.closeness[t]};
        plan.before.push_back(b);
        plan.after.push_back(a);
        obj_before = std::max(obj_before, b.lcc);
        obj_after = std::max(obj_after, a.lcc);

        if (config.omega_b > 0.0 && !(a.betweenness > config.omega_b)) {
            plan.violations.push_back({Violation::Kind::Betweenness, t, config.omega_b - a.betweenness});
        }
        if (config.omega_c > 0.0 && !(a.closeness > config.omega_c)) {
            plan.violations.push_back({Violation::Kind::Closeness, t, config.omega_c - a.closeness});
        }
        double wd = config.omega_d_for(original, t);
        if (wd > 0.0 && !(a.degree > wd)) {
            plan.violations.push_back({Violation::Kind::Degree, t, wd - a.degree});
        }
    }
    plan.objective_before = obj_before;
    plan.objective_after = obj_after;
    plan.feasible = plan.violations.empty();
}

}  // namespace netiv
