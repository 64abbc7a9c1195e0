#include "netiv/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "netiv/centrality.hpp"

namespace netiv {

namespace {

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

struct GreedyState {
    Graph working;
    std::vector<LccValue> original_lcc;
    CentralitySnapshot original_centrality;
    CentralitySnapshot current_centrality;
    bool centrality_tracked = false;
    bool centrality_dirty = false;

    const CentralitySnapshot& current(const Graph& g) {
        if (centrality_dirty) {
            current_centrality = centrality_snapshot(g, current_centrality.mode);
            centrality_dirty = false;
        }
        return current_centrality;
    }
};

GreedyState make_state(const Graph& g, const SolverConfig& config) {
    GreedyState st{g, baseline_lcc(g), {}, {}, false, false};
    bool need = (config.omega_b > 0.0 || config.omega_c > 0.0) ||
                (config.miss_mode == MissMode::Static && (config.static_w_b > 0.0 || config.static_w_c > 0.0));
    st.original_centrality.mode = config.centrality_mode;
    if (need) {
        st.original_centrality = centrality_snapshot(g, config.centrality_mode);
        st.current_centrality = st.original_centrality;
        st.centrality_tracked = true;
    } else {
        st.original_centrality.betweenness.assign(g.node_count(), 0.0);
        st.original_centrality.closeness.assign(g.node_count(), 0.0);
    }
    return st;
}

NodeId pick_max_lcc_target(const Graph& g, const std::vector<NodeId>& targets) {
    NodeId best = targets.front();
    LccValue best_lcc = g.lcc(best);
    for (NodeId t : targets) {
        LccValue v = g.lcc(t);
        if (best_lcc < v) {
            best = t;
            best_lcc = v;
        }
    }
    return best;
}

// Candidate ordering shared by BUM and SIM: primary key supplied by the
// caller (larger first), MISS score when the target is below a threshold.
InterventionPlan greedy_pair_baseline(const Graph& g, const std::vector<NodeId>& targets_in,
                                      const SolverConfig& config, bool restrict_to_targets, bool farthest_rule,
                                      const char* name) {
    config.validate();
    std::vector<NodeId> targets = sorted_unique(targets_in);
    if (targets.empty()) throw std::invalid_argument(std::string(name) + " needs a nonempty target set");

    GreedyState st = make_state(g, config);
    InterventionPlan plan;
    plan.targets = targets;

    for (std::size_t round = 0; round < config.k; ++round) {
        NodeId m = pick_max_lcc_target(st.working, targets);
        if (st.working.lcc(m).value() <= 0.0) {
            plan.notes.push_back(std::string(name) + ": all target LCCs at zero after " + std::to_string(round) +
                                 " edges");
            break;
        }

        std::vector<NodeId> pool;
        if (restrict_to_targets) {
            for (NodeId u : targets) {
                if (u != m && !st.working.has_edge(m, u)) pool.push_back(u);
            }
        } else {
            for (NodeId u = 0; u < st.working.node_count(); ++u) {
                if (u != m && !st.working.has_edge(m, u)) pool.push_back(u);
            }
        }
        if (pool.empty()) {
            plan.notes.push_back(std::string(name) + ": no candidate partner left");
            break;
        }

        bool engaged = false;
        NodeMetrics m_metrics{};
        if (st.centrality_tracked && (config.omega_b > 0.0 || config.omega_c > 0.0)) {
            const CentralitySnapshot& snap = st.current(st.working);
            m_metrics = {st.working.lcc(m).value(), static_cast<double>(st.working.degree(m)), snap.betweenness[m],
                         snap.closeness[m]};
            engaged = (config.omega_b > 0.0 && m_metrics.betweenness < config.omega_b) ||
                      (config.omega_c > 0.0 && m_metrics.closeness < config.omega_c);
        }

        std::vector<double> key(pool.size());
        if (engaged) {
            MissWeights weights = miss_weights(m_metrics, config.omega_b, config.omega_c, config.miss_mode,
                                               config.static_w_b, config.static_w_c);
            std::vector<NodeMetrics> raw;
            raw.reserve(pool.size());
            for (NodeId u : pool) {
                raw.push_back({0.0, static_cast<double>(g.degree(u)), st.original_centrality.betweenness[u],
                               st.original_centrality.closeness[u]});
            }
            std::vector<NodeMetrics> normalized = normalize_pool(raw);
            for (std::size_t i = 0; i < pool.size(); ++i) key[i] = miss_score(normalized[i], weights);
        } else if (farthest_rule) {
            std::vector<std::uint32_t> dist = bfs_distances(st.working, m);
            for (std::size_t i = 0; i < pool.size(); ++i) {
                key[i] = dist[pool[i]] == npos_distance ? std::numeric_limits<double>::infinity()
                                                        : static_cast<double>(dist[pool[i]]);
            }
        } else {
            for (std::size_t i = 0; i < pool.size(); ++i) key[i] = st.working.lcc(pool[i]).value();
        }

        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (key[a] != key[b]) return key[a] > key[b];
            return pool[a] < pool[b];
        });

        bool placed = false;
        for (std::size_t idx : order) {
            NodeId u = pool[idx];
            if (!edge_addition_within_tau(st.working, st.original_lcc, m, u, config.tau)) continue;
            st.working.add_edge(m, u);
            st.centrality_dirty = true;
            plan.edges.emplace_back(m, u);
            placed = true;
            break;
        }
        if (!placed) {
            plan.notes.push_back(std::string(name) + ": every candidate for target " + std::to_string(m) +
                                 " breaks the degradation bound");
            break;
        }
    }

    std::sort(plan.edges.begin(), plan.edges.end());
    audit_plan(g, plan, config);
    return plan;
}

}  // namespace

InterventionPlan bum(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config,
                     bool restrict_to_targets) {
    return greedy_pair_baseline(g, targets, config, restrict_to_targets, false, "bum");
}

InterventionPlan sim(const Graph& g, const std::vector<NodeId>& targets, const SolverConfig& config,
                     bool restrict_to_targets) {
    return greedy_pair_baseline(g, targets, config, restrict_to_targets, true, "sim");
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

namespace {

double subset_count(std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c;
}

struct EnumObjective {
    LccValue value;     // objective on the candidate graph
    bool valid = false;
};

// Applies a subset to a scratch copy and evaluates feasibility (degradation
// bound on every touched node plus the degree threshold) and the objective.
// The feasibility check looks at the final graph, since an intermediate
// bump can be healed by a later edge growing the denominator.
template <typename Objective>
EnumObjective evaluate_subset(const Graph& g, const std::vector<LccValue>& original_lcc,
                              const std::vector<Edge>& subset, const SolverConfig& config,
                              const std::vector<NodeId>& degree_targets, Objective objective) {
    Graph scratch = g;
    std::vector<NodeId> touched;
    for (const Edge& e : subset) {
        EdgeAdditionEffect effect = scratch.add_edge(e.u, e.v);
        for (const auto& entry : effect.changed) touched.push_back(entry.node);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (NodeId w : touched) {
        if (!lcc_increment_within(original_lcc[w], scratch.lcc(w), config.tau)) return {};
    }
    for (NodeId t : degree_targets) {
        double wd = config.omega_d_for(g, t);
        if (wd > 0.0 && !(static_cast<double>(scratch.degree(t)) > wd)) return {};
    }
    return {objective(scratch), true};
}

template <typename Objective>
InterventionPlan enumerate_subsets(const Graph& g, const std::vector<Edge>& candidates,
                                   const std::vector<NodeId>& targets, const SolverConfig& config,
                                   const EnumOptions& options, Objective objective) {
    std::vector<LccValue> original_lcc = baseline_lcc(g);

    std::vector<Edge> best_subset;
    EnumObjective best;
    auto consider = [&](const std::vector<Edge>& subset) {
        EnumObjective result = evaluate_subset(g, original_lcc, subset, config, targets, objective);
        if (!result.valid) return;
        if (!best.valid || result.value < best.value ||
            (result.value == best.value &&
             std::lexicographical_compare(subset.begin(), subset.end(), best_subset.begin(), best_subset.end()))) {
            best = result;
            best_subset = subset;
        }
    };

    auto enumerate_size = [&](std::size_t size) {
        if (size > candidates.size()) return;
        double count = subset_count(candidates.size(), size);
        if (count > static_cast<double>(options.subset_cap)) {
            throw std::runtime_error("enum: C(" + std::to_string(candidates.size()) + ", " + std::to_string(size) +
                                     ") = " + std::to_string(count) + " subsets exceeds the cap of " +
                                     std::to_string(options.subset_cap));
        }
        if (size == 0) {
            consider({});
            return;
        }
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        std::vector<Edge> subset(size);
        for (;;) {
            for (std::size_t i = 0; i < size; ++i) subset[i] = candidates[pick[i]];
            consider(subset);
            std::size_t i = size;
            while (i-- > 0) {
                if (pick[i] != i + candidates.size() - size) break;
                if (i == 0) return;
            }
            ++pick[i];
            for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    };

    InterventionPlan plan;
    plan.targets = targets;
    if (options.exact_k) {
        std::size_t size = std::min(config.k, candidates.size());
        for (;;) {
            enumerate_size(size);
            if (best.valid || size == 0) break;
            --size;  // no feasible subset of this size: relax downward
        }
        if (size < std::min(config.k, candidates.size())) {
            plan.notes.push_back("enum: no feasible subset of size " + std::to_string(std::min(config.k, candidates.size())) +
                                 ", settled at " + std::to_string(size));
        }
    } else {
        for (std::size_t size = 0; size <= std::min(config.k, candidates.size()); ++size) enumerate_size(size);
    }

    plan.edges = best_subset;
    audit_plan(g, plan, config);
    return plan;
}

}  // namespace

InterventionPlan enum_s(const Graph& g, NodeId t, const SolverConfig& config, const EnumOptions& options) {
    config.validate();
    if (!g.has_node(t)) throw std::out_of_range("enum_s: unknown target node " + std::to_string(t));
    std::vector<Edge> candidates;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (u != t && !g.has_edge(t, u)) candidates.emplace_back(t, u);
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<NodeId> targets{t};
    return enumerate_subsets(g, candidates, targets, config, options,
                             [t](const Graph& scratch) { return scratch.lcc(t); });
}

InterventionPlan enum_m(const Graph& g, const std::vector<NodeId>& targets_in, const SolverConfig& config,
                        const EnumOptions& options) {
    config.validate();
    std::vector<NodeId> targets = sorted_unique(targets_in);
    if (targets.empty()) throw std::invalid_argument("enum_m needs a nonempty target set");

    std::vector<Edge> candidates;
    if (options.endpoints_in_targets_only) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            for (std::size_t j = i + 1; j < targets.size(); ++j) {
                if (!g.has_edge(targets[i], targets[j])) candidates.emplace_back(targets[i], targets[j]);
            }
        }
    } else {
        for (NodeId t : targets) {
            for (NodeId u = 0; u < g.node_count(); ++u) {
                if (u != t && !g.has_edge(t, u)) candidates.emplace_back(t, u);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    }
    std::sort(candidates.begin(), candidates.end());

    auto objective = [&targets](const Graph& scratch) {
        LccValue worst{0, 0};
        for (NodeId t : targets) {
            LccValue v = scratch.lcc(t);
            if (worst < v) worst = v;
        }
        return worst;
    };
    return enumerate_subsets(g, candidates, targets, config, options, objective);
}

// ---------------------------------------------------------------------------
// Centrality / influence greedy augmenters

namespace {

double closeness_sum(const Graph& g, const std::vector<NodeId>& over) {
    std::vector<double> cc = closeness(g);
    if (over.empty()) {
        double s = 0.0;
        for (double c : cc) s += c;
        return s;
    }
    double s = 0.0;
    for (NodeId t : over) s += cc[t];
    return s;
}

InterventionPlan greedy_gain_baseline(const Graph& g, const SolverConfig& config,
                                      const std::vector<NodeId>& report_targets,
                                      const std::vector<Edge>& universe_in,
                                      double (*gain)(const Graph&, const std::vector<NodeId>&),
                                      const std::vector<NodeId>& gain_over, const char* name) {
    config.validate();
    InterventionPlan plan;
    plan.targets = report_targets;

    Graph working = g;
    std::vector<Edge> universe = universe_in;
    for (std::size_t round = 0; round < config.k && !universe.empty(); ++round) {
        double base = gain(working, gain_over);
        double best_gain = -std::numeric_limits<double>::infinity();
        std::size_t best_idx = universe.size();
        for (std::size_t i = 0; i < universe.size(); ++i) {
            Graph probe = working;
            probe.add_edge(universe[i].u, universe[i].v);
            double value = gain(probe, gain_over) - base;
            // gains equal up to accumulated rounding count as a tie, and the
            // universe is sorted, so the smaller edge stays
            if (value > best_gain + 1e-12) {
                best_gain = value;
                best_idx = i;
            }
        }
        if (best_idx == universe.size()) break;
        Edge chosen = universe[best_idx];
        working.add_edge(chosen.u, chosen.v);
        plan.edges.push_back(chosen);
        universe.erase(universe.begin() + best_idx);
    }

    std::sort(plan.edges.begin(), plan.edges.end());
    audit_plan(g, plan, config);
    plan.notes.push_back(std::string(name) + ": greedy over " + std::to_string(universe_in.size()) +
                         " candidate pairs");
    return plan;
}

std::vector<Edge> absent_pairs_incident(const Graph& g, const std::vector<NodeId>& targets) {
    std::vector<Edge> out;
    for (NodeId t : targets) {
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (u != t && !g.has_edge(t, u)) out.emplace_back(t, u);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

InterventionPlan ea(const Graph& g, const SolverConfig& config, const std::vector<NodeId>& report_targets,
                    std::size_t pair_cap) {
    std::vector<Edge> universe;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v = u + 1; v < g.node_count(); ++v) {
            if (!g.has_edge(u, v)) universe.emplace_back(u, v);
        }
    }
    bool capped = universe.size() > pair_cap;
    if (capped) {
        // keep the pairs most likely to matter for closeness: large degree product
        std::stable_sort(universe.begin(), universe.end(), [&](const Edge& a, const Edge& b) {
            auto pa = static_cast<std::uint64_t>(g.degree(a.u)) * g.degree(a.v);
            auto pb = static_cast<std::uint64_t>(g.degree(b.u)) * g.degree(b.v);
            if (pa != pb) return pa > pb;
            return a < b;
        });
        universe.resize(pair_cap);
        std::sort(universe.begin(), universe.end());
    }
    InterventionPlan plan = greedy_gain_baseline(g, config, report_targets, universe, closeness_sum, {}, "ea");
    if (capped) plan.notes.push_back("ea: candidate universe capped to " + std::to_string(pair_cap) + " pairs");
    return plan;
}

InterventionPlan tea(const Graph& g, const std::vector<NodeId>& targets_in, const SolverConfig& config) {
    std::vector<NodeId> targets = sorted_unique(targets_in);
    if (targets.empty()) throw std::invalid_argument("tea needs a nonempty target set");
    return greedy_gain_baseline(g, config, targets, absent_pairs_incident(g, targets), closeness_sum, targets,
                                "tea");
}

namespace {

double pagerank_sum(const Graph& g, const std::vector<NodeId>& over) {
    InfluenceScores scores = pagerank_influence(g);
    double s = 0.0;
    for (NodeId t : over) s += scores.scores[t];
    return s;
}

}  // namespace

InterventionPlan gd(const Graph& g, const std::vector<NodeId>& targets_in, const SolverConfig& config) {
    std::vector<NodeId> targets = sorted_unique(targets_in);
    if (targets.empty()) throw std::invalid_argument("gd needs a nonempty target set");
    return greedy_gain_baseline(g, config, targets, absent_pairs_incident(g, targets), pagerank_sum, targets, "gd");
}

}  // namespace netiv
