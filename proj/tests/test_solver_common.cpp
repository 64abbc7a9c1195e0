#include <doctest.h>

#include "netiv/generators.hpp"
#include "netiv/solver_types.hpp"
#include "oracles.hpp"

using namespace netiv;

TEST_CASE("miss_weights") {
    SUBCASE("thresholds met: pure degree selection") {
        NodeMetrics t{0.9, 4, 0.02, 0.2};
        MissWeights w = miss_weights(t, 0.01, 0.1);
        CHECK(w.w_b == 0.0);
        CHECK(w.w_c == 0.0);
    }
    SUBCASE("full deficit halves to (0.5, 0.5)") {
        NodeMetrics t{1.0, 2, 0.0, 0.0};
        MissWeights w = miss_weights(t, 0.01, 0.1);
        CHECK(w.w_b == 0.5);
        CHECK(w.w_c == 0.5);
    }
    SUBCASE("zero thresholds leave weights at zero") {
        NodeMetrics t{1.0, 2, 0.0, 0.0};
        MissWeights w = miss_weights(t, 0.0, 0.0);
        CHECK(w.w_b == 0.0);
        CHECK(w.w_c == 0.0);
    }
    SUBCASE("static mode passes the constants through") {
        NodeMetrics t{1.0, 2, 0.0, 0.0};
        MissWeights w = miss_weights(t, 0.01, 0.1, MissMode::Static, 0.33, 0.33);
        CHECK(w.w_b == 0.33);
        CHECK(w.w_c == 0.33);
    }
}

TEST_CASE("miss_score") {
    SUBCASE("weights (0,0) reduce to degree") {
        NodeMetrics a{0.0, 0.2, 0.9, 0.9};
        NodeMetrics b{0.0, 0.8, 0.1, 0.1};
        MissWeights none{0.0, 0.0};
        CHECK(miss_score(b, none) > miss_score(a, none));
    }
    SUBCASE("hand pool matches direct formula evaluation") {
        std::vector<NodeMetrics> pool{{0.0, 3, 0.10, 0.30}, {0.0, 7, 0.40, 0.10}, {0.0, 5, 0.90, 0.80},
                                      {0.0, 2, 0.20, 0.95}, {0.0, 9, 0.05, 0.50}};
        auto normalized = normalize_pool(pool);
        MissWeights w{0.33, 0.33};
        std::size_t best = 0;
        for (std::size_t i = 1; i < normalized.size(); ++i) {
            if (miss_score(normalized[i], w) > miss_score(normalized[best], w)) best = i;
        }
        // independent evaluation with explicit min-max scaling
        auto scale = [&](double x, double lo, double hi) { return hi > lo ? (x - lo) / (hi - lo) : 0.0; };
        std::size_t expected = 0;
        double expected_score = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double d = scale(pool[i].degree, 2, 9);
            double bb = scale(pool[i].betweenness, 0.05, 0.90);
            double cc = scale(pool[i].closeness, 0.10, 0.95);
            double s = 0.33 * bb + 0.33 * cc + 0.34 * d;
            if (s > expected_score) {
                expected_score = s;
                expected = i;
            }
        }
        CHECK(best == expected);
    }
}

TEST_CASE("normalize_pool collapses constant fields to zero") {
    std::vector<NodeMetrics> pool{{0.5, 4, 0.1, 0.2}, {0.5, 4, 0.3, 0.2}};
    auto normalized = normalize_pool(pool);
    CHECK(normalized[0].degree == 0.0);
    CHECK(normalized[1].degree == 0.0);
    CHECK(normalized[0].closeness == 0.0);
    CHECK(normalized[1].betweenness == 1.0);
}

TEST_CASE("lcc_increment_within is exact at tau = 0") {
    LccValue before{1, 3};
    CHECK(lcc_increment_within(before, LccValue{1, 3}, 0.0));
    CHECK(lcc_increment_within(before, LccValue{2, 6}, 0.0));   // same value, different pair
    CHECK(lcc_increment_within(before, LccValue{1, 6}, 0.0));   // decrease
    CHECK(!lcc_increment_within(before, LccValue{2, 5}, 0.0));  // tiny increase
    CHECK(lcc_increment_within(before, LccValue{2, 5}, 0.1));
}

TEST_CASE("edge_addition_within_tau agrees with a clone-and-diff oracle") {
    Graph g = gnp(20, 0.3, 61);
    auto original = baseline_lcc(g);
    for (NodeId u = 0; u < 20; ++u) {
        for (NodeId v = u + 1; v < 20; ++v) {
            if (g.has_edge(u, v)) continue;
            bool got = edge_addition_within_tau(g, original, u, v, 0.05);
            oracle::CloneEffect effect = oracle::effect_by_clone(g, u, v);
            bool expected = true;
            for (NodeId w : effect.changed) {
                if (effect.values[w].second - effect.values[w].first > 0.05) expected = false;
            }
            CHECK(got == expected);
        }
    }
}

TEST_CASE("audit_plan") {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(3, 4);

    SolverConfig config;
    config.k = 1;
    config.tau = 0.0;
    config.omega_d = 0.0;

    SUBCASE("tau violations are reported with the offenders") {
        // adding (1, 2) closes the triangle: 0, 1 and 2 all jump to LCC 1
        InterventionPlan plan;
        plan.targets = {1};
        plan.edges = {Edge(1, 2)};
        audit_plan(g, plan, config);
        CHECK(!plan.feasible);
        REQUIRE(plan.violations.size() == 3);
        for (const Violation& v : plan.violations) {
            CHECK(v.kind == Violation::Kind::TauIncrement);
            CHECK(v.node <= 2);
            CHECK(v.amount == doctest::Approx(1.0));
        }
    }
    SUBCASE("harmless edge passes") {
        InterventionPlan plan;
        plan.targets = {1};
        plan.edges = {Edge(1, 3)};
        audit_plan(g, plan, config);
        CHECK(plan.feasible);
        CHECK(plan.violations.empty());
    }
    SUBCASE("omega thresholds are strict and zero disables") {
        InterventionPlan plan;
        plan.targets = {1};
        SolverConfig strict = config;
        strict.omega_d = 1.0;  // degree must exceed 1
        audit_plan(g, plan, strict);
        CHECK(!plan.feasible);
        REQUIRE(plan.violations.size() == 1);
        CHECK(plan.violations[0].kind == Violation::Kind::Degree);
    }
    SUBCASE("default omega_d asks for degree + 1") {
        SolverConfig def;
        CHECK(def.omega_d_for(g, 1) == doctest::Approx(2.0));
    }
}

TEST_CASE("solver config validation") {
    SolverConfig config;
    config.tau = -0.1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.tau = 0.1;
    config.miss_mode = MissMode::Static;
    config.static_w_b = 0.7;
    config.static_w_c = 0.7;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
