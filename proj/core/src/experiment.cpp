#include "netiv/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include "netiv/crpd.hpp"
#include "netiv/oisa.hpp"
#include "netiv/rng.hpp"

namespace netiv {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string utc_now() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

}  // namespace

std::vector<NodeId> select_targets(const Graph& g, const TargetRule& rule, std::uint64_t seed) {
    switch (rule.kind) {
        case TargetRule::Kind::Explicit: {
            std::vector<NodeId> out;
            for (std::uint64_t label : rule.explicit_labels) {
                NodeId id;
                if (!g.lookup_label(label, id)) {
                    throw std::invalid_argument("explicit target label " + std::to_string(label) +
                                                " not present in the dataset");
                }
                out.push_back(id);
            }
            return out;
        }
        case TargetRule::Kind::SingleHighLcc: {
            std::vector<NodeId> pool;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (g.lcc(v).value() > rule.lcc_threshold) pool.push_back(v);
            }
            if (pool.empty()) {
                throw std::invalid_argument("no node has LCC above the target threshold " +
                                            std::to_string(rule.lcc_threshold));
            }
            Rng rng(seed);
            return {pool[rng.next_below(pool.size())]};
        }
        case TargetRule::Kind::TopLccFraction: {
            std::size_t n = g.node_count();
            if (n == 0) throw std::invalid_argument("empty graph");
            if (rule.pool_fraction <= 0.0 || rule.pool_fraction > 1.0 || rule.pick_fraction <= 0.0 ||
                rule.pick_fraction > 1.0) {
                throw std::invalid_argument("target rule fractions must lie in (0, 1]");
            }
            std::vector<NodeId> ranked(n);
            for (NodeId v = 0; v < n; ++v) ranked[v] = v;
            std::vector<double> lcc = g.all_lcc();
            std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
                if (lcc[a] != lcc[b]) return lcc[a] > lcc[b];
                return a < b;
            });
            std::size_t pool_size =
                std::min(n, std::max<std::size_t>(1, static_cast<std::size_t>(rule.pool_fraction * n)));
            std::size_t pick = std::max<std::size_t>(1, static_cast<std::size_t>(rule.pick_fraction * n));
            if (pick > pool_size) {
                throw std::invalid_argument("target sample (" + std::to_string(pick) +
                                            ") exceeds the eligible pool (" + std::to_string(pool_size) + ")");
            }
            ranked.resize(pool_size);
            Rng rng(seed);
            auto idx = rng.sample_without_replacement(static_cast<std::uint32_t>(pool_size),
                                                      static_cast<std::uint32_t>(pick));
            std::vector<NodeId> out;
            out.reserve(pick);
            for (auto i : idx) out.push_back(ranked[i]);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    throw std::logic_error("unhandled target rule");
}

// ---------------------------------------------------------------------------
// config <-> JSON

namespace {

CentralityMode centrality_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("mode", "exact") == "exact") return CentralityMode::exact();
    return CentralityMode::sampled(j.value("samples", 256u), j.value("seed", 0ull));
}

nlohmann::json centrality_to_json(const CentralityMode& mode) {
    nlohmann::json j;
    j["mode"] = mode.is_exact() ? "exact" : "sampled";
    if (!mode.is_exact()) {
        j["samples"] = mode.sample_count;
        j["seed"] = mode.seed;
    }
    return j;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.dataset = j.value("dataset", "");
    c.algorithm = j.value("algorithm", "crpd");
    c.trials = j.value("trials", 1u);
    c.restrict_to_targets = j.value("restrict_to_targets", false);
    c.threads = j.value("threads", 0u);

    const auto& s = j.contains("solver") ? j.at("solver") : nlohmann::json::object();
    c.solver.k = s.value("k", 1u);
    c.solver.tau = s.value("tau", 0.12);
    c.solver.omega_b = s.value("omega_b", 0.01);
    c.solver.omega_c = s.value("omega_c", 0.1);
    if (s.contains("omega_d") && !s.at("omega_d").is_null()) c.solver.omega_d = s.at("omega_d").get<double>();
    c.solver.seed = s.value("seed", 0ull);
    c.solver.alc_enabled = s.value("alc", true);
    if (s.contains("miss")) {
        const auto& m = s.at("miss");
        c.solver.miss_mode = m.value("mode", "adaptive") == "static" ? MissMode::Static : MissMode::Adaptive;
        c.solver.static_w_b = m.value("w_b", 0.33);
        c.solver.static_w_c = m.value("w_c", 0.33);
    }
    if (s.contains("centrality")) c.solver.centrality_mode = centrality_from_json(s.at("centrality"));

    if (j.contains("target_rule")) {
        const auto& t = j.at("target_rule");
        std::string kind = t.value("kind", "single_high_lcc");
        if (kind == "explicit") {
            c.target_rule.kind = TargetRule::Kind::Explicit;
            c.target_rule.explicit_labels = t.value("labels", std::vector<std::uint64_t>{});
        } else if (kind == "top_lcc_fraction") {
            c.target_rule.kind = TargetRule::Kind::TopLccFraction;
            c.target_rule.pool_fraction = t.value("pool_fraction", 0.4);
            c.target_rule.pick_fraction = t.value("pick_fraction", 0.2);
        } else {
            c.target_rule.kind = TargetRule::Kind::SingleHighLcc;
            c.target_rule.lcc_threshold = t.value("lcc_threshold", 0.8);
        }
    }
    if (j.contains("enum")) {
        const auto& e = j.at("enum");
        c.enum_options.subset_cap = e.value("subset_cap", static_cast<std::size_t>(10'000'000));
        c.enum_options.exact_k = e.value("exact_k", true);
        c.enum_options.endpoints_in_targets_only = e.value("endpoints_in_targets_only", true);
    }
    if (j.contains("sweep_algorithms")) {
        c.sweep_algorithms = j.at("sweep_algorithms").get<std::vector<std::string>>();
    }
    return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["dataset"] = c.dataset;
    j["algorithm"] = c.algorithm;
    j["trials"] = c.trials;
    j["restrict_to_targets"] = c.restrict_to_targets;
    j["threads"] = c.threads;

    nlohmann::json s;
    s["k"] = c.solver.k;
    s["tau"] = c.solver.tau;
    s["omega_b"] = c.solver.omega_b;
    s["omega_c"] = c.solver.omega_c;
    s["omega_d"] = c.solver.omega_d.has_value() ? nlohmann::json(*c.solver.omega_d) : nlohmann::json(nullptr);
    s["seed"] = c.solver.seed;
    s["alc"] = c.solver.alc_enabled;
    s["miss"] = {{"mode", c.solver.miss_mode == MissMode::Static ? "static" : "adaptive"},
                 {"w_b", c.solver.static_w_b},
                 {"w_c", c.solver.static_w_c}};
    s["centrality"] = centrality_to_json(c.solver.centrality_mode);
    j["solver"] = s;

    nlohmann::json t;
    switch (c.target_rule.kind) {
        case TargetRule::Kind::Explicit:
            t["kind"] = "explicit";
            t["labels"] = c.target_rule.explicit_labels;
            break;
        case TargetRule::Kind::SingleHighLcc:
            t["kind"] = "single_high_lcc";
            t["lcc_threshold"] = c.target_rule.lcc_threshold;
            break;
        case TargetRule::Kind::TopLccFraction:
            t["kind"] = "top_lcc_fraction";
            t["pool_fraction"] = c.target_rule.pool_fraction;
            t["pick_fraction"] = c.target_rule.pick_fraction;
            break;
    }
    j["target_rule"] = t;

    j["enum"] = {{"subset_cap", c.enum_options.subset_cap},
                 {"exact_k", c.enum_options.exact_k},
                 {"endpoints_in_targets_only", c.enum_options.endpoints_in_targets_only}};
    return j;
}

// ---------------------------------------------------------------------------
// run / sweep

InterventionPlan dispatch_algorithm(const Graph& g, const std::string& algorithm,
                                    const std::vector<NodeId>& targets, const ExperimentConfig& config) {
    const SolverConfig& s = config.solver;
    auto single_target = [&]() -> NodeId {
        if (targets.size() != 1) {
            throw std::invalid_argument(algorithm + " expects exactly one target, got " +
                                        std::to_string(targets.size()));
        }
        return targets.front();
    };
    if (algorithm == "crpd") return crpd(g, single_target(), s);
    if (algorithm == "oisa") return oisa(g, targets, s);
    if (algorithm == "bum") return bum(g, targets, s, config.restrict_to_targets);
    if (algorithm == "sim") return sim(g, targets, s, config.restrict_to_targets);
    if (algorithm == "enum-s" || algorithm == "enum_s") return enum_s(g, single_target(), s, config.enum_options);
    if (algorithm == "enum-m" || algorithm == "enum_m") return enum_m(g, targets, s, config.enum_options);
    if (algorithm == "ea") return ea(g, s, targets);
    if (algorithm == "tea") return tea(g, targets, s);
    if (algorithm == "gd") return gd(g, targets, s);
    throw std::invalid_argument("unknown algorithm: " + algorithm);
}

namespace {

nlohmann::json metrics_to_json(const NodeMetrics& m) {
    return {{"lcc", m.lcc}, {"degree", m.degree}, {"betweenness", m.betweenness}, {"closeness", m.closeness}};
}

nlohmann::json plan_to_json(const Graph& g, const InterventionPlan& plan) {
    nlohmann::json j;
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : plan.edges) {
        edges.push_back({g.original_label(e.u), g.original_label(e.v)});
    }
    j["edges_added"] = edges;
    nlohmann::json per_target = nlohmann::json::array();
    for (std::size_t i = 0; i < plan.targets.size(); ++i) {
        per_target.push_back({{"node", g.original_label(plan.targets[i])},
                              {"before", metrics_to_json(plan.before[i])},
                              {"after", metrics_to_json(plan.after[i])}});
    }
    j["per_target"] = per_target;
    j["max_lcc_before"] = plan.objective_before;
    j["max_lcc_after"] = plan.objective_after;

    nlohmann::json violations = nlohmann::json::array();
    for (const Violation& v : plan.violations) {
        violations.push_back({{"constraint", Violation::kind_name(v.kind)},
                              {"node", g.original_label(v.node)},
                              {"amount", v.amount}});
    }
    j["audit"] = {{"feasible", plan.feasible}, {"violations", violations}};

    if (!plan.level_diagnostics.empty()) {
        nlohmann::json levels = nlohmann::json::array();
        for (const LevelDiagnostic& d : plan.level_diagnostics) {
            levels.push_back({{"level", d.level},
                              {"k_lower_bound", d.k_lower_bound},
                              {"pruned", d.pruned},
                              {"edges", d.edges},
                              {"realized_max_lcc", d.realized_max_lcc},
                              {"stop_cause", d.stop_cause}});
        }
        j["levels"] = levels;
    }
    if (!plan.notes.empty()) j["notes"] = plan.notes;
    return j;
}

nlohmann::json run_single(const Graph& g, const ExperimentConfig& config, std::uint64_t seed) {
    ExperimentConfig local = config;
    local.solver.seed = seed;
    if (!local.solver.centrality_mode.is_exact()) local.solver.centrality_mode.seed = seed;

    nlohmann::json report;
    report["config"] = config_to_json(local);
    report["seed"] = seed;
    report["estimator_mode"] = local.solver.centrality_mode.describe();

    auto t0 = Clock::now();
    std::vector<NodeId> targets = select_targets(g, local.target_rule, seed);
    double metrics_ms = ms_since(t0);

    auto t1 = Clock::now();
    InterventionPlan plan = dispatch_algorithm(g, local.algorithm, targets, local);
    double solve_ms = ms_since(t1);

    // The plan arrives audited; stamp the report from it.
    nlohmann::json targets_json = nlohmann::json::array();
    for (NodeId t : plan.targets) targets_json.push_back(g.original_label(t));
    report["algorithm"] = local.algorithm;
    report["targets"] = targets_json;
    report.update(plan_to_json(g, plan));
    // wall-clock facts live under "timing" so everything else is
    // byte-reproducible for a fixed config and seed
    report["timing"] = {{"runtime_ms", {{"target_selection", metrics_ms}, {"solve", solve_ms}}}};
    return report;
}

}  // namespace

nlohmann::json run_on_graph(const Graph& g, const ExperimentConfig& config) {
    config.solver.validate();
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");

    if (config.trials == 1) {
        nlohmann::json report = run_single(g, config, config.solver.seed);
        report["timing"]["generated_at"] = utc_now();
        return report;
    }

    nlohmann::json report;
    report["config"] = config_to_json(config);
    nlohmann::json trials = nlohmann::json::array();
    double mean_after = 0.0, mean_before = 0.0;
    std::size_t feasible_count = 0;
    for (std::size_t i = 0; i < config.trials; ++i) {
        nlohmann::json one = run_single(g, config, config.solver.seed + i);
        mean_before += one["max_lcc_before"].get<double>();
        mean_after += one["max_lcc_after"].get<double>();
        feasible_count += one["audit"]["feasible"].get<bool>() ? 1 : 0;
        trials.push_back(std::move(one));
    }
    report["trials"] = std::move(trials);
    report["mean"] = {{"max_lcc_before", mean_before / config.trials},
                      {"max_lcc_after", mean_after / config.trials},
                      {"feasible_fraction", static_cast<double>(feasible_count) / config.trials}};
    report["timing"] = {{"generated_at", utc_now()}};
    return report;
}

nlohmann::json run(const ExperimentConfig& config) {
    auto t0 = Clock::now();
    Graph g = load_edge_list_file(config.dataset);
    double load_ms = ms_since(t0);
    nlohmann::json report = run_on_graph(g, config);
    report["timing"]["load_ms"] = load_ms;
    return report;
}

namespace {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string sweep_csv(const Graph& g, const ExperimentConfig& config, const std::string& axis,
                      const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (!std::is_sorted(values.begin(), values.end())) {
        throw std::invalid_argument("sweep values must be sorted ascending");
    }
    std::vector<std::string> algorithms =
        config.sweep_algorithms.empty() ? std::vector<std::string>{config.algorithm} : config.sweep_algorithms;

    std::string csv =
        "axis,value,algorithm,seed,objective_lcc_before,objective_lcc_after,edges_added,feasible,"
        "runtime_ms,mean_target_betweenness,mean_target_closeness\n";

    for (double value : values) {
        for (const std::string& algorithm : algorithms) {
            for (std::size_t trial = 0; trial < config.trials; ++trial) {
                ExperimentConfig cell = config;
                cell.algorithm = algorithm;
                cell.trials = 1;
                cell.solver.seed = config.solver.seed + trial;
                if (axis == "k") {
                    cell.solver.k = static_cast<std::size_t>(value);
                } else if (axis == "tau") {
                    cell.solver.tau = value;
                } else if (axis == "omega_b") {
                    cell.solver.omega_b = value;
                } else if (axis == "omega_c") {
                    cell.solver.omega_c = value;
                } else {
                    throw std::invalid_argument("unknown sweep axis: " + axis);
                }

                auto t0 = Clock::now();
                nlohmann::json report = run_single(g, cell, cell.solver.seed);
                double cell_ms = ms_since(t0);

                double mean_b = 0.0, mean_c = 0.0;
                const auto& per_target = report["per_target"];
                for (const auto& entry : per_target) {
                    mean_b += entry["after"]["betweenness"].get<double>();
                    mean_c += entry["after"]["closeness"].get<double>();
                }
                if (!per_target.empty()) {
                    mean_b /= per_target.size();
                    mean_c /= per_target.size();
                }

                csv += axis + "," + format_double(value) + "," + algorithm + "," +
                       std::to_string(cell.solver.seed) + "," +
                       format_double(report["max_lcc_before"].get<double>()) + "," +
                       format_double(report["max_lcc_after"].get<double>()) + "," +
                       std::to_string(report["edges_added"].size()) + "," +
                       (report["audit"]["feasible"].get<bool>() ? "1" : "0") + "," + format_double(cell_ms) + "," +
                       format_double(mean_b) + "," + format_double(mean_c) + "\n";
            }
        }
    }
    return csv;
}

}  // namespace netiv
