#include <doctest.h>

#include <chrono>
#include <iostream>

#include "netiv/baselines.hpp"
#include "netiv/crpd.hpp"
#include "netiv/generators.hpp"
#include "netiv/rng.hpp"
#include "oracles.hpp"

using namespace netiv;

namespace {

SolverConfig loose_config(std::size_t k, double tau) {
    SolverConfig config;
    config.k = k;
    config.tau = tau;
    config.omega_b = 0.0;
    config.omega_c = 0.0;
    config.omega_d = 0.0;
    return config;
}

}  // namespace

TEST_CASE("feasible_candidates") {
    SUBCASE("tau = 1 admits every non-neighbor") {
        Graph g = gnp(15, 0.3, 3);
        auto original = baseline_lcc(g);
        CandidatePool pool = feasible_candidates(g, 0, original, 1.0);
        std::size_t non_neighbors = 0;
        for (NodeId v = 1; v < 15; ++v) {
            if (!g.has_edge(0, v)) ++non_neighbors;
        }
        CHECK(pool.candidates.size() == non_neighbors);
    }
    SUBCASE("distance >= 3 from everyone admits all non-neighbors even at tau = 0") {
        Graph g(7);
        g.add_edge(0, 1);          // t = 0 in its own corner
        for (NodeId i = 2; i + 1 < 7; ++i) g.add_edge(i, i + 1);
        auto original = baseline_lcc(g);
        CandidatePool pool = feasible_candidates(g, 0, original, 0.0);
        CHECK(pool.candidates.size() == 5);
    }
    SUBCASE("matches the clone-mutate-recheck oracle") {
        Graph g = gnp(20, 0.3, 7);
        auto original = baseline_lcc(g);
        NodeId t = 4;
        CandidatePool pool = feasible_candidates(g, t, original, 0.05);
        std::vector<NodeId> expected;
        for (NodeId i = 0; i < 20; ++i) {
            if (i == t || g.has_edge(t, i)) continue;
            oracle::CloneEffect effect = oracle::effect_by_clone(g, t, i);
            bool ok = true;
            for (NodeId w : effect.changed) {
                if (effect.values[w].second - effect.values[w].first > 0.05) ok = false;
            }
            if (ok) expected.push_back(i);
        }
        CHECK(pool.candidates == expected);
    }
}

TEST_CASE("crpd_baseline") {
    SUBCASE("independent candidates: numerator frozen, denominator grows") {
        // t = 0 sits in a triangle; candidates 3..5 are an isolated independent set
        Graph g(6);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        SolverConfig config = loose_config(3, 0.05);
        BaselineResult run = crpd_baseline(g, 0, 3, {}, config);
        REQUIRE(run.edges.size() == 3);
        Graph after = oracle::with_edges(g, run.edges);
        CHECK(after.lcc(0).triangles == 1);
        CHECK(after.lcc(0).pairs == 10);  // C(2+3, 2)
    }
    SUBCASE("tau = 0 on a triangle-free graph selects an independent set") {
        // bipartite, hence triangle-free
        Rng rng(11);
        Graph g(12);
        for (NodeId a = 0; a < 6; ++a) {
            for (NodeId b = 6; b < 12; ++b) {
                if (rng.next_double() < 0.35) g.add_edge(a, b);
            }
        }
        Graph with_t(13);
        for (NodeId u = 0; u < 12; ++u) {
            for (NodeId v : g.neighbors(u)) {
                if (v > u) with_t.add_edge(u, v);
            }
        }
        NodeId t = 12;
        BaselineResult run = crpd_baseline(with_t, t, 3, {}, loose_config(3, 0.0));
        for (std::size_t i = 0; i < run.edges.size(); ++i) {
            for (std::size_t j = i + 1; j < run.edges.size(); ++j) {
                NodeId a = run.edges[i].u == t ? run.edges[i].v : run.edges[i].u;
                NodeId b = run.edges[j].u == t ? run.edges[j].v : run.edges[j].u;
                CHECK(!with_t.has_edge(a, b));
            }
        }
        Graph after = oracle::with_edges(with_t, run.edges);
        CHECK(after.lcc(t).value() == 0.0);
    }
}

TEST_CASE("re-selection can beat the plain baseline") {
    // Seeded search for an instance with the removal-then-regret shape, then
    // check that the full solver returns the better of the two runs.
    bool found = false;
    for (std::uint64_t seed = 0; seed < 300 && !found; ++seed) {
        Graph g = gnp(16, 0.3, seed);
        NodeId t = static_cast<NodeId>(seed % 16);
        SolverConfig config = loose_config(3, 0.05);
        config.seed = seed;

        BaselineResult plain = crpd_baseline(g, t, config.k, {}, config);
        if (!plain.has_removed) continue;
        BaselineResult reseeded = crpd_baseline(g, t, config.k, {Edge(t, plain.min_degree_removed.node)}, config);

        Graph after_plain = oracle::with_edges(g, plain.edges);
        Graph after_reseeded = oracle::with_edges(g, reseeded.edges);
        if (after_reseeded.lcc(t) < after_plain.lcc(t)) {
            found = true;
            InterventionPlan full = crpd(g, t, config);
            Graph after_full = oracle::with_edges(g, full.edges);
            CHECK(after_full.lcc(t) == after_reseeded.lcc(t));
        }
    }
    CHECK(found);
}

TEST_CASE("crpd") {
    SUBCASE("k = 0 returns an empty plan") {
        Graph g = gnp(10, 0.3, 17);
        InterventionPlan plan = crpd(g, 0, loose_config(0, 0.05));
        CHECK(plan.edges.empty());
        CHECK(plan.objective_before == plan.objective_after);
    }
    SUBCASE("unknown target") {
        Graph g = gnp(5, 0.3, 1);
        CHECK_THROWS_AS(crpd(g, 99, loose_config(1, 0.1)), std::out_of_range);
    }
    SUBCASE("determinism") {
        Graph g = gnp(20, 0.25, 19);
        SolverConfig config = loose_config(3, 0.05);
        config.seed = 5;
        InterventionPlan a = crpd(g, 2, config);
        InterventionPlan b = crpd(g, 2, config);
        CHECK(a.edges == b.edges);
    }
    SUBCASE("every plan passes the degradation audit") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = gnp(18, 0.25, seed + 500);
            InterventionPlan plan = crpd(g, static_cast<NodeId>(seed % 18), loose_config(3, 0.05));
            for (const Violation& v : plan.violations) CHECK(v.kind != Violation::Kind::TauIncrement);
        }
    }
    SUBCASE("edges all touch the target, none pre-existing, no duplicates") {
        Graph g = gnp(20, 0.3, 23);
        NodeId t = 7;
        InterventionPlan plan = crpd(g, t, loose_config(4, 0.1));
        std::set<Edge> seen;
        for (const Edge& e : plan.edges) {
            CHECK((e.u == t || e.v == t));
            CHECK(!g.has_edge(e.u, e.v));
            CHECK(seen.insert(e).second);
        }
    }
    SUBCASE("never better than the exhaustive optimum, often equal") {
        int equal = 0, total = 0;
        EnumOptions upto;
        upto.exact_k = false;
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Graph g = gnp(14, 0.3, seed + 900);
            NodeId t = static_cast<NodeId>(seed % 14);
            SolverConfig config = loose_config(1 + seed % 3, 0.05);
            InterventionPlan mine = crpd(g, t, config);
            InterventionPlan best = enum_s(g, t, config, upto);
            LccValue mine_lcc = oracle::with_edges(g, mine.edges).lcc(t);
            LccValue best_lcc = oracle::with_edges(g, best.edges).lcc(t);
            CHECK(best_lcc <= mine_lcc);
            if (mine_lcc == best_lcc) ++equal;
            ++total;
        }
        MESSAGE("crpd equals the exhaustive optimum on ", equal, "/", total, " random instances");
    }
}

TEST_CASE("mean objective is monotone in k and tau over many seeds") {
    std::vector<double> mean_by_k;
    for (std::size_t k = 1; k <= 3; ++k) {
        double sum = 0.0;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            Graph g = gnp(40, 0.2, 7000 + seed);
            NodeId t = static_cast<NodeId>(seed % 40);
            InterventionPlan plan = crpd(g, t, loose_config(k, 0.12));
            sum += oracle::with_edges(g, plan.edges).lcc(t).value();
        }
        mean_by_k.push_back(sum / 30.0);
    }
    CHECK(mean_by_k[1] <= mean_by_k[0] + 1e-12);
    CHECK(mean_by_k[2] <= mean_by_k[1] + 1e-12);

    // The tau trend concerns the experimental protocol: clustered sparse
    // graphs with a high-LCC target, where slack admits more helpful
    // candidates instead of self-harming ones.
    std::vector<double> mean_by_tau;
    for (double tau : {0.02, 0.08, 0.2}) {
        double sum = 0.0;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            CollabParams params;
            params.nodes = 300;
            params.edges = 950;
            params.target_avg_lcc = 0.65;
            Graph g = collab_like(params, 8000 + seed);
            NodeId t = 0;
            double best = -1.0;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (g.lcc(v).value() > best) {
                    best = g.lcc(v).value();
                    t = v;
                }
            }
            InterventionPlan plan = crpd(g, t, loose_config(3, tau));
            sum += oracle::with_edges(g, plan.edges).lcc(t).value();
        }
        mean_by_tau.push_back(sum / 30.0);
    }
    CHECK(mean_by_tau[1] <= mean_by_tau[0] + 1e-12);
    CHECK(mean_by_tau[2] <= mean_by_tau[1] + 1e-12);
}

TEST_CASE("edge selection time grows sublinearly enough in k") {
    Graph g = gnp(1500, 0.004, 77);
    NodeId t = 3;
    auto time_solve = [&](std::size_t k) {
        SolverConfig config = loose_config(k, 0.2);
        double best = 1e100;
        for (int rep = 0; rep < 3; ++rep) {
            auto start = std::chrono::steady_clock::now();
            crpd(g, t, config);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            best = std::min(best, ms);
        }
        return best;
    };
    double at_k = time_solve(20);
    double at_2k = time_solve(40);
    MESSAGE("selection time k=20: ", at_k, " ms, k=40: ", at_2k, " ms");
    CHECK(at_2k < 3.0 * at_k + 20.0);
}
