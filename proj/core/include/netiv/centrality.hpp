#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netiv/graph.hpp"

namespace netiv {

// Exact mode visits every source; sampled mode visits `sample_count` pivot
// sources drawn without replacement from a seeded permutation, scaled to an
// unbiased estimate. Sampled with sample_count >= |V| coincides with exact.
struct CentralityMode {
    enum class Kind { Exact, Sampled };
    Kind kind = Kind::Exact;
    std::uint32_t sample_count = 256;
    std::uint64_t seed = 0;

    static CentralityMode exact() { return {}; }
    static CentralityMode sampled(std::uint32_t count, std::uint64_t seed) {
        return {Kind::Sampled, count, seed};
    }

    bool is_exact() const { return kind == Kind::Exact; }
    std::string describe() const;
    friend bool operator==(const CentralityMode&, const CentralityMode&) = default;
};

struct CentralitySnapshot {
    std::vector<double> betweenness;  // normalized by (n-1)(n-2)/2, endpoints excluded
    std::vector<double> closeness;    // harmonic, normalized by (n-1)
    CentralityMode mode;
};

// Brandes accumulation over the mode's source set. Parallel chunks merge in
// a fixed order, so results do not depend on the worker count.
std::vector<double> betweenness(const Graph& g, const CentralityMode& mode = CentralityMode::exact(),
                                unsigned threads = 0);

// Harmonic closeness: c(v) = sum of reciprocal hop distances / (n-1).
// Unreachable pairs contribute 0, so disconnected graphs are fine.
std::vector<double> closeness(const Graph& g, unsigned threads = 0);

// Both measures in one pass over the mode's sources.
CentralitySnapshot centrality_snapshot(const Graph& g, const CentralityMode& mode = CentralityMode::exact(),
                                       unsigned threads = 0);

// Contract: equals centrality_snapshot(g, snapshot.mode) on the graph that
// already contains the new edge. Recomputes from scratch.
CentralitySnapshot refresh_after_insert(const CentralitySnapshot& snapshot, const Graph& g, NodeId u, NodeId v);

struct InfluenceScores {
    std::vector<double> scores;  // non-negative, sums to 1
    double damping = 0.85;
    double tolerance = 1e-10;
    std::size_t iterations = 0;
};

class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Power iteration with dangling mass redistributed uniformly. Throws
// NumericError when the L1 residual is still above tolerance at the cap.
InfluenceScores pagerank_influence(const Graph& g, double damping = 0.85, double tolerance = 1e-10,
                                   std::size_t max_iterations = 1000);

// Hop distances from a source; unreachable nodes get npos_distance.
inline constexpr std::uint32_t npos_distance = 0xffffffffu;
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

}  // namespace netiv
