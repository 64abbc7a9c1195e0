#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "netiv/baselines.hpp"
#include "netiv/solver_types.hpp"

namespace netiv {

struct TargetRule {
    enum class Kind { Explicit, SingleHighLcc, TopLccFraction };
    Kind kind = Kind::SingleHighLcc;
    std::vector<std::uint64_t> explicit_labels;  // original dataset labels
    double lcc_threshold = 0.8;                  // SingleHighLcc: pool = LCC strictly above
    double pool_fraction = 0.4;                  // TopLccFraction: pool = top fraction by LCC
    double pick_fraction = 0.2;                  //                 sample size as fraction of |V|
};

// Deterministic under seed. SingleHighLcc picks one node uniformly from the
// pool above the threshold; TopLccFraction samples pick_fraction*|V| nodes
// without replacement from the top pool_fraction*|V| by LCC.
std::vector<NodeId> select_targets(const Graph& g, const TargetRule& rule, std::uint64_t seed);

struct ExperimentConfig {
    std::string dataset;              // edge-list path (harness `run` loads it)
    std::string algorithm = "crpd";   // crpd | oisa | bum | sim | ea | tea | gd | enum-s | enum-m
    SolverConfig solver;
    TargetRule target_rule;
    std::size_t trials = 1;
    bool restrict_to_targets = false;  // bum/sim partner restriction
    EnumOptions enum_options;
    std::vector<std::string> sweep_algorithms;  // defaults to {algorithm}
    unsigned threads = 0;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Executes one configured run: select targets, solve, audit from scratch,
// return the JSON report. Multi-trial configs repeat with consecutive seeds
// and attach per-trial summaries plus means. The report is byte-stable for a
// fixed config and seed except for the generated_at field.
nlohmann::json run(const ExperimentConfig& config);
nlohmann::json run_on_graph(const Graph& g, const ExperimentConfig& config);

// One CSV row per (axis value, algorithm, trial seed). The header is fixed:
// axis,value,algorithm,seed,objective_lcc_before,objective_lcc_after,
// edges_added,feasible,runtime_ms,mean_target_betweenness,mean_target_closeness
std::string sweep_csv(const Graph& g, const ExperimentConfig& config, const std::string& axis,
                      const std::vector<double>& values);

// Report helper shared by run/sweep: solve with the named algorithm.
InterventionPlan dispatch_algorithm(const Graph& g, const std::string& algorithm,
                                    const std::vector<NodeId>& targets, const ExperimentConfig& config);

}  // namespace netiv
