#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netiv/baselines.hpp"
#include "netiv/centrality.hpp"
#include "netiv/experiment.hpp"
#include "netiv/generators.hpp"
#include "netiv/graph.hpp"
#include "netiv/threshold_graph.hpp"

namespace {

using netiv::ExperimentConfig;
using netiv::Graph;

struct SolverFlags {
    std::size_t k = 1;
    double tau = 0.12;
    double omega_b = 0.01;
    double omega_c = 0.1;
    double omega_d = -1.0;  // <0: per-target default (degree + 1)
    std::string miss = "adaptive";
    double w_b = 0.33;
    double w_c = 0.33;
    std::uint64_t seed = 0;
    std::string centrality = "auto";  // auto | exact | sampled
    std::uint32_t samples = 256;
    std::size_t trials = 1;
    bool no_alc = false;
    unsigned threads = 0;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--k", f.k, "edge budget");
    cmd->add_option("--tau", f.tau, "LCC degradation bound");
    cmd->add_option("--omega-b", f.omega_b, "betweenness lower bound (0 disables)");
    cmd->add_option("--omega-c", f.omega_c, "closeness lower bound (0 disables)");
    cmd->add_option("--omega-d", f.omega_d, "degree lower bound (0 disables; omit for degree+1 default)");
    cmd->add_option("--miss", f.miss, "MISS weight mode: adaptive|static")->check(CLI::IsMember({"adaptive", "static"}));
    cmd->add_option("--wb", f.w_b, "static MISS betweenness weight");
    cmd->add_option("--wc", f.w_c, "static MISS closeness weight");
    cmd->add_option("--seed", f.seed, "run seed");
    cmd->add_option("--centrality", f.centrality, "centrality estimator: auto|exact|sampled")
        ->check(CLI::IsMember({"auto", "exact", "sampled"}));
    cmd->add_option("--samples", f.samples, "pivot sources for sampled centrality");
    cmd->add_option("--trials", f.trials, "trials averaged over consecutive seeds");
    cmd->add_flag("--no-alc", f.no_alc, "disable the LCC upper-bound acceleration");
    cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
}

void apply_solver_flags(ExperimentConfig& config, const SolverFlags& f, std::size_t node_count) {
    config.solver.k = f.k;
    config.solver.tau = f.tau;
    config.solver.omega_b = f.omega_b;
    config.solver.omega_c = f.omega_c;
    if (f.omega_d >= 0.0) config.solver.omega_d = f.omega_d;
    config.solver.miss_mode = f.miss == "static" ? netiv::MissMode::Static : netiv::MissMode::Adaptive;
    config.solver.static_w_b = f.w_b;
    config.solver.static_w_c = f.w_c;
    config.solver.seed = f.seed;
    config.solver.alc_enabled = !f.no_alc;
    config.trials = f.trials;
    config.threads = f.threads;
    if (f.centrality == "exact") {
        config.solver.centrality_mode = netiv::CentralityMode::exact();
    } else if (f.centrality == "sampled") {
        config.solver.centrality_mode = netiv::CentralityMode::sampled(f.samples, f.seed);
    } else {
        // exact below the guard, sampled above it
        config.solver.centrality_mode = node_count > 50'000
                                            ? netiv::CentralityMode::sampled(f.samples, f.seed)
                                            : netiv::CentralityMode::exact();
    }
}

std::vector<std::uint64_t> parse_labels(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoull(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

int emit_report(const nlohmann::json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text << '\n';
    }
    bool feasible = report.contains("audit") ? report["audit"]["feasible"].get<bool>()
                                             : report["trials"].back()["audit"]["feasible"].get<bool>();
    return feasible ? 0 : 2;
}

int run_solve(const std::string& dataset, const std::string& algo, const std::string& targets_csv,
              const std::string& rule, double rule_threshold, double pool_fraction, double pick_fraction,
              const SolverFlags& flags, bool restrict_to_targets, bool upto_k, bool any_endpoint,
              const std::string& out_path) {
    Graph g = netiv::load_edge_list_file(dataset);

    ExperimentConfig config;
    config.dataset = dataset;
    config.algorithm = algo;
    config.restrict_to_targets = restrict_to_targets;
    config.enum_options.exact_k = !upto_k;
    config.enum_options.endpoints_in_targets_only = !any_endpoint;
    apply_solver_flags(config, flags, g.node_count());

    if (!targets_csv.empty()) {
        config.target_rule.kind = netiv::TargetRule::Kind::Explicit;
        config.target_rule.explicit_labels = parse_labels(targets_csv);
    } else if (rule == "single-high-lcc") {
        config.target_rule.kind = netiv::TargetRule::Kind::SingleHighLcc;
        config.target_rule.lcc_threshold = rule_threshold;
    } else if (rule == "top-lcc") {
        config.target_rule.kind = netiv::TargetRule::Kind::TopLccFraction;
        config.target_rule.pool_fraction = pool_fraction;
        config.target_rule.pick_fraction = pick_fraction;
    } else {
        throw std::invalid_argument("unknown target rule: " + rule);
    }

    return emit_report(netiv::run_on_graph(g, config), out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netiv: plans edge additions that lower local clustering under degradation and centrality bounds"};
    app.require_subcommand(1);

    // --- lcc ---------------------------------------------------------------
    std::string lcc_path;
    std::int64_t lcc_node = -1;
    auto* cmd_lcc = app.add_subcommand("lcc", "per-node local clustering coefficients of an edge list");
    cmd_lcc->add_option("edgelist", lcc_path)->required();
    cmd_lcc->add_option("--node", lcc_node, "single node label to report");

    // --- centrality ----------------------------------------------------------
    std::string cent_path, cent_mode = "exact";
    std::uint32_t cent_samples = 256;
    std::uint64_t cent_seed = 0;
    auto* cmd_cent = app.add_subcommand("centrality", "betweenness and closeness per node");
    cmd_cent->add_option("edgelist", cent_path)->required();
    cmd_cent->add_option("--mode", cent_mode)->check(CLI::IsMember({"exact", "sampled"}));
    cmd_cent->add_option("--samples", cent_samples);
    cmd_cent->add_option("--seed", cent_seed);

    // --- solve-s -------------------------------------------------------------
    std::string ss_path, ss_algo = "crpd", ss_target, ss_out;
    SolverFlags ss_flags;
    auto* cmd_ss = app.add_subcommand("solve-s", "single-target intervention (crpd and baselines)");
    cmd_ss->add_option("edgelist", ss_path)->required();
    cmd_ss->add_option("--algo", ss_algo)
        ->check(CLI::IsMember({"crpd", "bum", "sim", "ea", "tea", "gd", "enum-s"}));
    cmd_ss->add_option("--target", ss_target, "target node label (omit to sample a high-LCC node)");
    double ss_threshold = 0.8;
    cmd_ss->add_option("--lcc-threshold", ss_threshold, "pool threshold when sampling the target");
    cmd_ss->add_option("-o,--out", ss_out, "report path (default: stdout)");
    add_solver_flags(cmd_ss, ss_flags);

    // --- solve-m -------------------------------------------------------------
    std::string sm_path, sm_algo = "oisa", sm_targets, sm_rule = "top-lcc", sm_out;
    double sm_pool = 0.4, sm_pick = 0.2, sm_threshold = 0.8;
    bool sm_restrict = false;
    SolverFlags sm_flags;
    auto* cmd_sm = app.add_subcommand("solve-m", "multi-target intervention (oisa and baselines)");
    cmd_sm->add_option("edgelist", sm_path)->required();
    cmd_sm->add_option("--algo", sm_algo)
        ->check(CLI::IsMember({"oisa", "bum", "sim", "ea", "tea", "gd", "enum-m"}));
    cmd_sm->add_option("--targets", sm_targets, "comma-separated target labels");
    cmd_sm->add_option("--rule", sm_rule, "target rule when --targets omitted: top-lcc|single-high-lcc")
        ->check(CLI::IsMember({"top-lcc", "single-high-lcc"}));
    cmd_sm->add_option("--pool-fraction", sm_pool);
    cmd_sm->add_option("--pick-fraction", sm_pick);
    cmd_sm->add_option("--lcc-threshold", sm_threshold);
    cmd_sm->add_flag("--restrict-to-targets", sm_restrict, "bum/sim partners drawn from T only");
    cmd_sm->add_option("-o,--out", sm_out);
    add_solver_flags(cmd_sm, sm_flags);

    // --- enum ----------------------------------------------------------------
    std::string en_path, en_target, en_targets, en_out;
    bool en_upto = false, en_any_endpoint = false;
    std::size_t en_cap = 10'000'000;
    SolverFlags en_flags;
    auto* cmd_enum = app.add_subcommand("enum", "exhaustive optimum on small instances");
    cmd_enum->add_option("edgelist", en_path)->required();
    cmd_enum->add_option("--target", en_target, "single-target mode label");
    cmd_enum->add_option("--targets", en_targets, "multi-target mode labels");
    cmd_enum->add_flag("--upto-k", en_upto, "optimize over all subset sizes <= k");
    cmd_enum->add_flag("--any-endpoint", en_any_endpoint, "multi-target candidates need only one endpoint in T");
    cmd_enum->add_option("--cap", en_cap, "maximum subsets before refusing");
    cmd_enum->add_option("-o,--out", en_out);
    add_solver_flags(cmd_enum, en_flags);

    // --- gen-threshold ---------------------------------------------------------
    std::size_t gt_n = 20;
    std::uint64_t gt_seed = 0;
    std::string gt_out;
    auto* cmd_gt = app.add_subcommand("gen-threshold", "random threshold graph (edge list + spec sidecar)");
    cmd_gt->add_option("--n", gt_n)->required();
    cmd_gt->add_option("--seed", gt_seed);
    cmd_gt->add_option("-o,--out", gt_out, "path prefix; writes <prefix>.edges and <prefix>.spec.json");

    // --- gen-cpep / gen-collab --------------------------------------------------
    std::uint64_t gc_seed = 0;
    std::string gc_out;
    auto* cmd_gc = app.add_subcommand("gen-cpep", "synthetic multi-classroom network (226 nodes, avg LCC 0.71)");
    cmd_gc->add_option("--seed", gc_seed);
    cmd_gc->add_option("-o,--out", gc_out);

    std::uint64_t gl_seed = 0;
    std::size_t gl_nodes = 23133, gl_edges = 93497;
    double gl_lcc = 0.63;
    std::string gl_out;
    auto* cmd_gl = app.add_subcommand("gen-collab", "synthetic co-authorship network at a chosen scale");
    cmd_gl->add_option("--seed", gl_seed);
    cmd_gl->add_option("--nodes", gl_nodes);
    cmd_gl->add_option("--edges", gl_edges);
    cmd_gl->add_option("--avg-lcc", gl_lcc);
    cmd_gl->add_option("-o,--out", gl_out);

    // --- sweep -------------------------------------------------------------------
    std::string sw_config, sw_axis = "k", sw_values, sw_out;
    auto* cmd_sw = app.add_subcommand("sweep", "parameter sweep to CSV");
    cmd_sw->add_option("--config", sw_config, "experiment config JSON")->required();
    cmd_sw->add_option("--axis", sw_axis)->check(CLI::IsMember({"k", "tau", "omega_b", "omega_c"}));
    cmd_sw->add_option("--values", sw_values, "comma-separated ascending values")->required();
    cmd_sw->add_option("-o,--out", sw_out, "CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_lcc->parsed()) {
            Graph g = netiv::load_edge_list_file(lcc_path);
            if (lcc_node >= 0) {
                netiv::NodeId id;
                if (!g.lookup_label(static_cast<std::uint64_t>(lcc_node), id)) {
                    throw std::invalid_argument("node label " + std::to_string(lcc_node) + " not in dataset");
                }
                std::cout << g.lcc(id).value() << '\n';
            } else {
                for (netiv::NodeId v = 0; v < g.node_count(); ++v) {
                    std::cout << g.original_label(v) << '\t' << g.lcc(v).value() << '\n';
                }
            }
            return 0;
        }

        if (cmd_cent->parsed()) {
            Graph g = netiv::load_edge_list_file(cent_path);
            netiv::CentralityMode mode = cent_mode == "sampled"
                                             ? netiv::CentralityMode::sampled(cent_samples, cent_seed)
                                             : netiv::CentralityMode::exact();
            netiv::CentralitySnapshot snap = netiv::centrality_snapshot(g, mode);
            std::cout << "# mode: " << mode.describe() << '\n';
            std::cout << "# node\tbetweenness\tcloseness\n";
            for (netiv::NodeId v = 0; v < g.node_count(); ++v) {
                std::cout << g.original_label(v) << '\t' << snap.betweenness[v] << '\t' << snap.closeness[v] << '\n';
            }
            return 0;
        }

        if (cmd_ss->parsed()) {
            return run_solve(ss_path, ss_algo, ss_target, "single-high-lcc", ss_threshold, 0.4, 0.2, ss_flags,
                             false, false, false, ss_out);
        }

        if (cmd_sm->parsed()) {
            return run_solve(sm_path, sm_algo, sm_targets, sm_rule, sm_threshold, sm_pool, sm_pick, sm_flags,
                             sm_restrict, false, false, sm_out);
        }

        if (cmd_enum->parsed()) {
            std::string algo = en_targets.empty() ? "enum-s" : "enum-m";
            std::string targets = en_targets.empty() ? en_target : en_targets;
            if (targets.empty()) throw std::invalid_argument("enum needs --target or --targets");
            auto result = [&] {
                Graph g = netiv::load_edge_list_file(en_path);
                ExperimentConfig config;
                config.dataset = en_path;
                config.algorithm = algo;
                config.enum_options.exact_k = !en_upto;
                config.enum_options.endpoints_in_targets_only = !en_any_endpoint;
                config.enum_options.subset_cap = en_cap;
                apply_solver_flags(config, en_flags, g.node_count());
                config.target_rule.kind = netiv::TargetRule::Kind::Explicit;
                config.target_rule.explicit_labels = parse_labels(targets);
                return netiv::run_on_graph(g, config);
            }();
            return emit_report(result, en_out);
        }

        if (cmd_gt->parsed()) {
            netiv::ThresholdGraphSpec spec = netiv::random_spec(gt_n, gt_seed);
            netiv::ThresholdPartition part = netiv::partition(spec);
            Graph g = netiv::realize(spec);
            nlohmann::json sidecar;
            sidecar["n"] = gt_n;
            sidecar["seed"] = gt_seed;
            sidecar["weights"] = spec.weights;
            sidecar["threshold"] = spec.threshold;
            sidecar["partition"] = {{"isolated", part.isolated},
                                    {"independent", part.independent},
                                    {"clique", part.clique}};
            if (gt_out.empty()) {
                netiv::save_edge_list(g, std::cout);
                std::cerr << "note: pass --out PREFIX to also write the spec sidecar\n";
            } else {
                std::ofstream edges(gt_out + ".edges");
                netiv::save_edge_list(g, edges);
                std::ofstream sc(gt_out + ".spec.json");
                sc << sidecar.dump(2) << '\n';
            }
            return 0;
        }

        if (cmd_gc->parsed() || cmd_gl->parsed()) {
            Graph g = cmd_gc->parsed()
                          ? netiv::classroom_like({}, gc_seed)
                          : netiv::collab_like({gl_nodes, gl_edges, gl_lcc, 0.02}, gl_seed);
            const std::string& path = cmd_gc->parsed() ? gc_out : gl_out;
            double avg = 0.0;
            for (double x : g.all_lcc()) avg += x;
            avg /= static_cast<double>(g.node_count());
            std::cerr << "# synthetic graph: " << g.node_count() << " nodes, " << g.edge_count()
                      << " edges, avg LCC " << avg << '\n';
            if (path.empty()) {
                netiv::save_edge_list(g, std::cout);
            } else {
                std::ofstream out(path);
                netiv::save_edge_list(g, out);
            }
            return 0;
        }

        if (cmd_sw->parsed()) {
            std::ifstream in(sw_config);
            if (!in) throw std::runtime_error("cannot open config: " + sw_config);
            nlohmann::json j = nlohmann::json::parse(in);
            ExperimentConfig config = netiv::config_from_json(j);
            Graph g = netiv::load_edge_list_file(config.dataset);
            std::vector<double> values;
            std::size_t pos = 0;
            while (pos < sw_values.size()) {
                std::size_t comma = sw_values.find(',', pos);
                if (comma == std::string::npos) comma = sw_values.size();
                values.push_back(std::stod(sw_values.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            std::string csv = netiv::sweep_csv(g, config, sw_axis, values);
            if (sw_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(sw_out);
                out << csv;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
