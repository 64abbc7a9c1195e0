#include <benchmark/benchmark.h>

#include "netiv/centrality.hpp"
#include "netiv/crpd.hpp"
#include "netiv/generators.hpp"
#include "netiv/oisa.hpp"
#include "netiv/rng.hpp"

using namespace netiv;

namespace {

Graph bench_graph(std::size_t nodes) {
    CollabParams params;
    params.nodes = nodes;
    params.edges = nodes * 4;
    params.target_avg_lcc = 0.63;
    return collab_like(params, 4242);
}

void BM_TriangleCounts(benchmark::State& state) {
    Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.compute_all_triangle_counts());
    }
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_TriangleCounts)->Arg(2000)->Arg(10000);

void BM_WhatIfInsertion(benchmark::State& state) {
    Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
    Rng rng(7);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    while (pairs.size() < 512) {
        NodeId u = static_cast<NodeId>(rng.next_below(g.node_count()));
        NodeId v = static_cast<NodeId>(rng.next_below(g.node_count()));
        if (u != v && !g.has_edge(u, v)) pairs.emplace_back(u, v);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        auto [u, v] = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(g.lcc_if_added(u, v));
    }
}
BENCHMARK(BM_WhatIfInsertion)->Arg(2000)->Arg(10000);

void BM_EdgeInsertion(benchmark::State& state) {
    Graph base = bench_graph(static_cast<std::size_t>(state.range(0)));
    Rng rng(11);
    for (auto _ : state) {
        state.PauseTiming();
        Graph g = base;
        NodeId u, v;
        do {
            u = static_cast<NodeId>(rng.next_below(g.node_count()));
            v = static_cast<NodeId>(rng.next_below(g.node_count()));
        } while (u == v || g.has_edge(u, v));
        state.ResumeTiming();
        benchmark::DoNotOptimize(g.add_edge(u, v));
    }
}
BENCHMARK(BM_EdgeInsertion)->Arg(10000);

void BM_BetweennessSampled(benchmark::State& state) {
    Graph g = bench_graph(10000);
    CentralityMode mode = CentralityMode::sampled(static_cast<std::uint32_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(centrality_snapshot(g, mode));
    }
}
BENCHMARK(BM_BetweennessSampled)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SingleTargetSolve(benchmark::State& state) {
    Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
    SolverConfig config;
    config.k = 5;
    config.tau = 0.12;
    config.omega_b = 0.0;
    config.omega_c = 0.0;
    config.omega_d = 0.0;
    NodeId t = 0;
    double best = -1.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.lcc(v).value() > best) {
            best = g.lcc(v).value();
            t = v;
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpd(g, t, config));
    }
}
BENCHMARK(BM_SingleTargetSolve)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MultiTargetSolve(benchmark::State& state) {
    Graph g = bench_graph(2000);
    SolverConfig config;
    config.k = static_cast<std::size_t>(state.range(0));
    config.tau = 0.12;
    config.omega_b = 0.0;
    config.omega_c = 0.0;
    config.omega_d = 0.0;
    std::vector<NodeId> ranked(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) ranked[v] = v;
    std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
        return g.lcc(b) < g.lcc(a);
    });
    std::vector<NodeId> targets(ranked.begin(), ranked.begin() + 50);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oisa(g, targets, config));
    }
}
BENCHMARK(BM_MultiTargetSolve)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
