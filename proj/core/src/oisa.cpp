#include "netiv/oisa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netiv {

std::uint64_t required_edges(double lcc, std::uint64_t degree, double level) {
    if (level <= 0.0) throw std::invalid_argument("targeted LCC level must be > 0");
    double d = static_cast<double>(degree);
    auto satisfied = [&](std::uint64_t k_t) {
        double kt = static_cast<double>(k_t);
        double denom = (d + kt) * (d + kt - 1.0);
        if (denom <= 0.0) return true;  // fewer than two neighbors: LCC is 0
        return lcc * d * (d - 1.0) / denom <= level;
    };
    if (satisfied(0)) return 0;

    // (d+k)(d+k-1) >= lcc*d*(d-1)/level, solved for the positive root.
    double a = lcc * d * (d - 1.0) / level;
    double x = (1.0 + std::sqrt(1.0 + 4.0 * a)) / 2.0;
    double guess = std::max(0.0, std::ceil(x - d));
    std::uint64_t k_t = static_cast<std::uint64_t>(guess);
    while (k_t > 0 && satisfied(k_t - 1)) --k_t;
    while (!satisfied(k_t)) ++k_t;
    return k_t;
}

EdgeBudgetBound lower_bound_k_G(const std::vector<TargetRequirement>& targets, double level) {
    EdgeBudgetBound out;
    double sum = 0.0;
    for (const auto& t : targets) {
        std::uint64_t k_t = required_edges(t.lcc, t.degree, level);
        double need = std::max(static_cast<double>(k_t), t.omega_d - static_cast<double>(t.degree));
        out.per_target_edges.push_back(k_t);
        out.per_target_need.push_back(need);
        sum += need;
    }
    out.k_lower_bound = 0.5 * sum;
    return out;
}

EdgeBudgetBound lower_bound_k_G(const Graph& g, const std::vector<NodeId>& targets, double level,
                                const SolverConfig& config) {
    std::vector<TargetRequirement> reqs;
    reqs.reserve(targets.size());
    for (NodeId t : targets) {
        reqs.push_back({g.lcc(t).value(), g.degree(t), config.omega_d_for(g, t)});
    }
    return lower_bound_k_G(reqs, level);
}

LccGrid lcc_grid(const Graph& g, const std::vector<NodeId>& targets, std::size_t k) {
    if (targets.empty()) throw std::invalid_argument("lcc_grid needs a nonempty target set");
    if (k < 1) throw std::invalid_argument("lcc_grid needs k >= 1");

    std::vector<NodeId> ranked = targets;
    std::sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
        LccValue la = g.lcc(a), lb = g.lcc(b);
        if (!(la == lb)) return lb < la;
        return a < b;
    });
    std::size_t take = std::min(ranked.size(), 2 * k);

    LccGrid grid;
    for (std::size_t i = 0; i < take; ++i) grid.d_hat_2k = std::max<std::uint64_t>(grid.d_hat_2k, g.degree(ranked[i]));

    double max_lcc = 0.0;
    for (NodeId t : targets) max_lcc = std::max(max_lcc, g.lcc(t).value());

    std::uint64_t denom = pairs_of(grid.d_hat_2k);
    if (denom == 0) {
        grid.levels = {1.0};
        return grid;
    }
    for (std::uint64_t j = 1; j <= denom; ++j) {
        double level = static_cast<double>(j) / static_cast<double>(denom);
        grid.levels.push_back(level);
        if (level >= max_lcc) break;
    }
    return grid;
}

OptionSet optionality(const Graph& working, NodeId t, const std::vector<NodeId>& targets, double tau,
                      const std::vector<LccValue>& original_lcc) {
    OptionSet out;
    out.owner = t;

    // 1 = neighbor, 2 = two hops away; everything else is >= 3 or unreachable
    std::vector<std::uint8_t> ring(working.node_count(), 0);
    for (NodeId w : working.neighbors(t)) ring[w] = 1;
    for (NodeId w : working.neighbors(t)) {
        for (NodeId x : working.neighbors(w)) {
            if (x != t && ring[x] == 0) ring[x] = 2;
        }
    }

    for (NodeId u : targets) {
        if (u == t || ring[u] == 1) continue;
        if (ring[u] == 2) {
            bool ok = true;
            for (NodeId w : working.common_neighbors(t, u)) {
                LccValue after{working.triangle_pairs(w) + 1, pairs_of(working.degree(w))};
                if (!lcc_increment_within(original_lcc[w], after, tau)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
        }
        out.options.push_back(u);
    }
    return out;
}

OptionSet optionality(const Graph& g, NodeId t, const std::vector<NodeId>& targets, double tau) {
    return optionality(g, t, targets, tau, baseline_lcc(g));
}

LccUpperBound lcc_upper_bound(std::uint64_t triangles, std::uint64_t degree, std::size_t k) {
    LccUpperBound best{0, 1};
    for (std::size_t k1 = 0; k1 <= k; ++k1) {
        std::uint64_t k2 = k - k1;
        std::uint64_t den = pairs_of(degree + k1);
        if (den == 0) continue;  // still fewer than two neighbors: LCC stays 0
        std::uint64_t num = triangles + k2 + k1 * degree + pairs_of(k1);
        if (static_cast<__uint128_t>(num) * best.den > static_cast<__uint128_t>(best.num) * den) {
            best = {num, den};
        }
    }
    return best;
}

bool early_stop_check(std::size_t k, std::size_t edges_placed, const std::vector<std::size_t>& edges_at_target,
                      const std::vector<double>& per_target_need) {
    for (std::size_t i = 0; i < per_target_need.size(); ++i) {
        double room = static_cast<double>(k) - static_cast<double>(edges_placed) +
                      static_cast<double>(edges_at_target[i]);
        if (room < per_target_need[i]) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// PONF level state

std::size_t PonfContext::target_index(NodeId t) const {
    return std::lower_bound(targets.begin(), targets.end(), t) - targets.begin();
}

PonfContext make_ponf_context(const Graph& g, const std::vector<NodeId>& targets_in, const SolverConfig& config) {
    PonfContext ctx;
    ctx.original = &g;
    ctx.original_lcc = baseline_lcc(g);
    ctx.targets = targets_in;
    std::sort(ctx.targets.begin(), ctx.targets.end());
    ctx.targets.erase(std::unique(ctx.targets.begin(), ctx.targets.end()), ctx.targets.end());
    ctx.working = g;
    ctx.edges_at_target.assign(ctx.targets.size(), 0);
    ctx.budget = config.k;
    ctx.alc = config.alc_enabled;

    ctx.cached_lcc.resize(ctx.targets.size());
    ctx.stale.assign(ctx.targets.size(), false);
    ctx.bound_full_budget.resize(ctx.targets.size());
    for (std::size_t i = 0; i < ctx.targets.size(); ++i) {
        NodeId t = ctx.targets[i];
        ctx.cached_lcc[i] = ctx.original_lcc[t].value();
        ctx.bound_full_budget[i] = lcc_upper_bound(g.triangle_pairs(t), g.degree(t), config.k).value();
    }

    bool need_centrality =
        (config.omega_b > 0.0 || config.omega_c > 0.0) ||
        (config.miss_mode == MissMode::Static && (config.static_w_b > 0.0 || config.static_w_c > 0.0));
    if (need_centrality) {
        ctx.original_centrality = centrality_snapshot(g, config.centrality_mode);
        ctx.current_centrality = ctx.original_centrality;
        ctx.centrality_tracked = config.omega_b > 0.0 || config.omega_c > 0.0;
    }
    return ctx;
}

namespace {

// Neighborhood edge recount straight from adjacency; deliberately does not
// read the graph's incremental triangle counter.
double recount_lcc(const Graph& g, NodeId v) {
    const auto& nb = g.neighbors(v);
    if (nb.size() < 2) return 0.0;
    std::uint64_t twice = 0;
    for (NodeId w : nb) {
        const auto& wn = g.neighbors(w);
        std::size_t i = 0, j = 0;
        while (i < nb.size() && j < wn.size()) {
            if (nb[i] < wn[j]) {
                ++i;
            } else if (wn[j] < nb[i]) {
                ++j;
            } else {
                ++twice;
                ++i;
                ++j;
            }
        }
    }
    double pairs = static_cast<double>(nb.size()) * (static_cast<double>(nb.size()) - 1.0) / 2.0;
    return static_cast<double>(twice / 2) / pairs;
}

void refresh_entry(PonfContext& ctx, std::size_t idx) {
    ctx.cached_lcc[idx] = recount_lcc(ctx.working, ctx.targets[idx]);
    ctx.stale[idx] = false;
    ++ctx.recounts;
}

// Exact maximum of the cache. Stale entries are refreshed only when their
// precomputed bound says they could reach the running maximum; skipped
// entries provably sit below it.
double cache_max(PonfContext& ctx) {
    double best = -1.0;
    for (std::size_t i = 0; i < ctx.targets.size(); ++i) {
        if (ctx.stale[i]) {
            if (ctx.bound_full_budget[i] < best) continue;
            refresh_entry(ctx, i);
        }
        best = std::max(best, ctx.cached_lcc[i]);
    }
    return best;
}

const CentralitySnapshot& working_centrality(PonfContext& ctx) {
    if (ctx.centrality_dirty) {
        ctx.current_centrality = centrality_snapshot(ctx.working, ctx.current_centrality.mode);
        ctx.centrality_dirty = false;
    }
    return ctx.current_centrality;
}

}  // namespace

std::optional<std::pair<NodeId, NodeId>> ponf_select(PonfContext& ctx, const SolverConfig& config) {
    ctx.last_stop = PonfContext::StopReason::None;
    double best = cache_max(ctx);
    if (best <= 0.0) {
        ctx.last_stop = PonfContext::StopReason::TargetsAtZero;
        return std::nullopt;
    }

    struct TiedTarget {
        std::size_t idx;
        OptionSet options;
    };
    std::vector<TiedTarget> tied;
    for (std::size_t i = 0; i < ctx.targets.size(); ++i) {
        if (!ctx.stale[i] && ctx.cached_lcc[i] == best) {
            tied.push_back({i, optionality(ctx.working, ctx.targets[i], ctx.targets, config.tau, ctx.original_lcc)});
        }
    }
    std::stable_sort(tied.begin(), tied.end(), [&](const TiedTarget& a, const TiedTarget& b) {
        if (a.options.optionality() != b.options.optionality()) {
            return a.options.optionality() < b.options.optionality();
        }
        return ctx.targets[a.idx] < ctx.targets[b.idx];
    });

    for (const TiedTarget& cand : tied) {
        NodeId m = ctx.targets[cand.idx];
        std::vector<NodeId> usable;
        for (NodeId u : cand.options.options) {
            if (edge_addition_within_tau(ctx.working, ctx.original_lcc, m, u, config.tau)) usable.push_back(u);
        }
        if (usable.empty()) continue;

        bool engaged = false;
        NodeMetrics m_metrics{};
        if (ctx.centrality_tracked && (config.omega_b > 0.0 || config.omega_c > 0.0)) {
            const CentralitySnapshot& snap = working_centrality(ctx);
            m_metrics = {ctx.working.lcc(m).value(), static_cast<double>(ctx.working.degree(m)),
                         snap.betweenness[m], snap.closeness[m]};
            engaged = (config.omega_b > 0.0 && m_metrics.betweenness < config.omega_b) ||
                      (config.omega_c > 0.0 && m_metrics.closeness < config.omega_c);
        }

        NodeId u_best = usable.front();
        if (!engaged) {
            double u_lcc = -1.0;
            for (NodeId u : usable) {
                std::size_t idx = ctx.target_index(u);
                if (ctx.stale[idx]) {
                    if (ctx.bound_full_budget[idx] < u_lcc) continue;
                    refresh_entry(ctx, idx);
                }
                if (ctx.cached_lcc[idx] > u_lcc) {
                    u_lcc = ctx.cached_lcc[idx];
                    u_best = u;
                }
            }
        } else {
            MissWeights weights = miss_weights(m_metrics, config.omega_b, config.omega_c, config.miss_mode,
                                               config.static_w_b, config.static_w_c);
            bool have_centrality = !ctx.original_centrality.betweenness.empty();
            std::vector<NodeMetrics> raw;
            raw.reserve(usable.size());
            for (NodeId u : usable) {
                raw.push_back({0.0, static_cast<double>(ctx.original->degree(u)),
                               have_centrality ? ctx.original_centrality.betweenness[u] : 0.0,
                               have_centrality ? ctx.original_centrality.closeness[u] : 0.0});
            }
            std::vector<NodeMetrics> normalized = normalize_pool(raw);
            double score = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < usable.size(); ++i) {
                double s = miss_score(normalized[i], weights);
                if (s > score) {
                    score = s;
                    u_best = usable[i];
                }
            }
        }
        return std::make_pair(m, u_best);
    }

    ctx.last_stop = PonfContext::StopReason::OptionsExhausted;
    return std::nullopt;
}

void ponf_apply(PonfContext& ctx, NodeId m, NodeId u) {
    EdgeAdditionEffect effect = ctx.working.add_edge(m, u);
    ctx.edges.emplace_back(m, u);
    ++ctx.edges_at_target[ctx.target_index(m)];
    ++ctx.edges_at_target[ctx.target_index(u)];
    ctx.centrality_dirty = true;

    double frontier = -1.0;
    if (ctx.alc) {
        for (std::size_t i = 0; i < ctx.targets.size(); ++i) {
            if (!ctx.stale[i]) frontier = std::max(frontier, ctx.cached_lcc[i]);
        }
    }
    for (const auto& entry : effect.changed) {
        auto it = std::lower_bound(ctx.targets.begin(), ctx.targets.end(), entry.node);
        if (it == ctx.targets.end() || *it != entry.node) continue;
        std::size_t idx = it - ctx.targets.begin();
        if (ctx.alc && ctx.bound_full_budget[idx] < frontier) {
            ctx.stale[idx] = true;  // cannot become m or u while the frontier holds
        } else {
            refresh_entry(ctx, idx);
        }
    }
}

namespace {

LccValue exact_max_target_lcc(const Graph& g, const std::vector<NodeId>& targets) {
    LccValue best{0, 0};
    for (NodeId t : targets) {
        LccValue v = g.lcc(t);
        if (best < v) best = v;
    }
    return best;
}

}  // namespace

InterventionPlan oisa(const Graph& g, const std::vector<NodeId>& targets_in, const SolverConfig& config) {
    config.validate();
    if (targets_in.empty()) throw std::invalid_argument("oisa needs a nonempty target set");
    std::vector<NodeId> targets = targets_in;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (NodeId t : targets) {
        if (!g.has_node(t)) throw std::out_of_range("oisa: unknown target node " + std::to_string(t));
    }

    InterventionPlan plan;
    plan.targets = targets;

    if (config.k == 0) {
        audit_plan(g, plan, config);
        plan.notes.push_back("k = 0: nothing to select");
        return plan;
    }

    LccValue initial_max = exact_max_target_lcc(g, targets);
    if (initial_max.value() <= 0.0) {
        audit_plan(g, plan, config);
        plan.notes.push_back("all targets already at LCC 0");
        return plan;
    }

    // One shared base state; each level starts from a copy of it.
    PonfContext base = make_ponf_context(g, targets, config);

    LccGrid grid = lcc_grid(g, targets, config.k);

    std::vector<Edge> best_edges;
    LccValue best_realized = initial_max;
    std::uint64_t total_recounts = 0;

    for (double level : grid.levels) {
        EdgeBudgetBound bound = lower_bound_k_G(g, targets, level, config);
        LevelDiagnostic diag;
        diag.level = level;
        diag.k_lower_bound = bound.k_lower_bound;

        if (bound.k_lower_bound > static_cast<double>(config.k)) {
            diag.pruned = true;
            diag.realized_max_lcc = initial_max.value();
            diag.stop_cause = "pruned: edge lower bound exceeds budget";
            plan.level_diagnostics.push_back(diag);
            continue;
        }

        PonfContext ctx = base;
        std::string stop_cause = "budget spent";
        for (std::size_t round = 0; round < config.k; ++round) {
            if (early_stop_check(config.k, ctx.edges.size(), ctx.edges_at_target, bound.per_target_need)) {
                stop_cause = "early stop: a target cannot reach the level";
                break;
            }
            auto sel = ponf_select(ctx, config);
            if (!sel) {
                stop_cause = ctx.last_stop == PonfContext::StopReason::TargetsAtZero
                                 ? "all target LCCs at zero"
                                 : "option sets exhausted";
                break;
            }
            ponf_apply(ctx, sel->first, sel->second);
        }

        LccValue realized = exact_max_target_lcc(ctx.working, targets);
        diag.edges = ctx.edges.size();
        diag.realized_max_lcc = realized.value();
        diag.stop_cause = stop_cause;
        plan.level_diagnostics.push_back(diag);
        total_recounts += ctx.recounts;

        std::vector<Edge> canonical = ctx.edges;
        std::sort(canonical.begin(), canonical.end());
        bool better = false;
        if (realized < best_realized) {
            better = true;
        } else if (realized == best_realized && !best_edges.empty()) {
            if (canonical.size() < best_edges.size()) {
                better = true;
            } else if (canonical.size() == best_edges.size() &&
                       std::lexicographical_compare(canonical.begin(), canonical.end(), best_edges.begin(),
                                                    best_edges.end())) {
                better = true;
            }
        }
        if (better) {
            best_edges = std::move(canonical);
            best_realized = realized;
        }
    }

    plan.edges = best_edges;
    audit_plan(g, plan, config);
    plan.notes.push_back("selection cache recounts: " + std::to_string(total_recounts));
    return plan;
}

}  // namespace netiv
