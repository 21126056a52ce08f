#include <doctest.h>

#include "generators.hpp"
#include "gnf/equilibria.hpp"
#include "gnf/one_two.hpp"
#include "gnf/scenarios.hpp"
#include "gnf/tree.hpp"
#include "oracles.hpp"

using namespace gnf;

TEST_CASE("deviation matrix basics") {
    auto m = metric_from_one_two(2, {{0, 1}});
    StrategyProfile s(2);
    auto dm = deviation_matrix(m, s, 0);
    REQUIRE(dm.at(1, 1).has_value());
    CHECK(*dm.at(1, 1) == m.dist(0, 1));

    // a target nobody else approaches keeps only its direct-edge entry
    auto m3 = metric_from_one_two(3, {});
    StrategyProfile s3(3);
    auto dm3 = deviation_matrix(m3, s3, 0);
    CHECK(dm3.at(1, 1).has_value());
    CHECK(!dm3.at(2, 1).has_value());
}

TEST_CASE("deviation-matrix cost equals direct evaluation") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        auto m = gen::one_two(n, seed);
        auto s = gen::profile(n, seed * 7 + 2);
        for (int u = 0; u < n; ++u) {
            auto dm = deviation_matrix(m, s, u);
            for (std::uint64_t alt = 0; alt < 4; ++alt) {
                auto trial = gen::profile(n, seed * 100 + alt).strategies[u];
                StrategyProfile changed = s;
                changed.set(u, trial);
                auto via_matrix = dm.cost_of(changed.strategies[u], Rat(1));
                auto direct = oracle::agent_cost_dfs(m, changed, u, Rat(1));
                CHECK(via_matrix.unreachable == direct.unreachable);
                CHECK(via_matrix.finite_stretch_sum == direct.finite_stretch_sum);
            }
        }
    }
}

TEST_CASE("exact best response matches full enumeration") {
    auto lex = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        int n = 4 + static_cast<int>(seed % 3);
        auto m = gen::one_two(n, seed);
        auto s = gen::profile(n, seed * 11 + 4);
        for (int u = 0; u < n; ++u) {
            auto fast = best_response_exact(m, s, u, Rat(1), lex);
            auto slow = oracle::best_response_enumerate(m, s, u, Rat(1), lex);
            CHECK(fast.strategy == slow.first);
            CHECK(compare_costs(fast.cost, slow.second, lex) == 0);
        }
    }
    // Euclidean backend
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto m = metric_from_points(gen::points(6, seed));
        auto s = gen::profile(6, seed * 5 + 1);
        auto zl = ZPolicyT<double>::lex();
        auto fast = best_response_exact(m, s, 0, 1.0, zl);
        auto slow = oracle::best_response_enumerate(m, s, 0, 1.0, zl);
        CHECK(fast.strategy == slow.first);
    }
}

TEST_CASE("two-agent best response") {
    auto m = metric_from_one_two(2, {{0, 1}});
    StrategyProfile s(2);
    auto br = best_response_exact(m, s, 0, Rat(1), ZPolicyT<Rat>::lex());
    CHECK(br.strategy == std::vector<int>{1});
    CHECK(br.cost.finite_total() == Rat(2));  // alpha + 1
}

TEST_CASE("triangle best response is the MaxDSG row") {
    auto m = metric_from_one_two(3, {{0, 1}, {1, 2}});
    StrategyProfile s(3);
    s.set(1, {0, 2});
    s.set(2, {0, 1});
    auto br = best_response_exact(m, s, 0, Rat(3, 10), ZPolicyT<Rat>::lex());
    CHECK(br.strategy == max_dsg(m).strategies[0]);
    CHECK(br.strategy == std::vector<int>{1});
    CHECK(br.strategy == one_two_best_response(m, s, 0, Rat(3, 10)));
}

TEST_CASE("ge-gap instance: exact best response confirms the bound") {
    auto sc = ge_gap_instance(6, Rat(2));
    auto z = ZPolicyT<Rat>::lex();
    auto br = best_response_exact(sc.metric, sc.profile, sc.u, sc.alpha, z);
    CHECK(br.cost.unreachable == 0);
    CHECK(br.cost.finite_total() == Rat(21, 2));  // 2a + 1.5n - 2.5 = 10.5
    auto slow = oracle::best_response_enumerate(sc.metric, sc.profile, sc.u, sc.alpha, z);
    CHECK(br.strategy == slow.first);
    // deviator's facility matrix: first hop v reaches each a_i at 2 + 1
    auto dm = deviation_matrix(sc.metric, sc.profile, sc.u);
    REQUIRE(dm.at(sc.v, 3).has_value());
    CHECK(*dm.at(sc.v, 3) == Rat(3));
}

TEST_CASE("greedy best response is feasible and never beats exact") {
    auto lex = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        int n = 5 + static_cast<int>(seed % 3);
        auto m = gen::one_two(n, seed);
        auto s = gen::profile(n, seed * 3 + 7);
        for (int u = 0; u < n; ++u) {
            auto dm = deviation_matrix(m, s, u);
            auto greedy = best_response_greedy(m, s, u, Rat(1), lex);
            auto exact = best_response_exact(m, s, u, Rat(1), lex);
            auto gc = dm.cost_of(greedy, Rat(1));
            CHECK(compare_costs(exact.cost, gc, lex) <= 0);
            CHECK(gc.unreachable == 0);  // direct edges always available
        }
    }
    auto m2 = metric_from_one_two(2, {});
    StrategyProfile s2(2);
    CHECK(best_response_greedy(m2, s2, 0, Rat(1), lex) == std::vector<int>{1});
}

TEST_CASE("greedy equilibrium checker") {
    // MaxDSG plus one redundant 2-edge: deleting it is the improving move
    auto m = metric_from_one_two(3, {{0, 1}, {1, 2}});
    StrategyProfile s = max_dsg(m);
    s.add_edge(0, 2);
    auto report = is_greedy_equilibrium(m, s, Rat(1), ZPolicyT<Rat>::lex());
    CHECK(!report.verdict);
    CHECK(*report.agent == 0);
    REQUIRE(report.move.has_value());
    CHECK(report.move->kind == Move::Kind::del);
    CHECK(report.move->remove == 2);

    CHECK(is_greedy_equilibrium(m, max_dsg(m), Rat(1), ZPolicyT<Rat>::lex()).verdict);
}

TEST_CASE("nash checker") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto m = gen::one_two(6, seed);
        CHECK(is_nash_equilibrium(m, max_dsg(m), Rat(3, 10), z).verdict);
    }
    auto sc = ge_gap_instance(6, Rat(2));
    CHECK(is_greedy_equilibrium(sc.metric, sc.profile, sc.alpha, z).verdict);
    CHECK(!is_nash_equilibrium(sc.metric, sc.profile, sc.alpha, z).verdict);

    auto m2 = metric_from_one_two(2, {});
    CHECK(!is_nash_equilibrium(m2, StrategyProfile(2), Rat(1), z).verdict);
}

TEST_CASE("nash implies greedy equilibrium") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen::one_two(5, seed);
        for (const Rat& alpha : {Rat(3, 10), Rat(1), Rat(2)}) {
            auto s = bdsg(m, alpha);
            if (is_nash_equilibrium(m, s, alpha, z).verdict) {
                CHECK(is_greedy_equilibrium(m, s, alpha, z).verdict);
            }
        }
    }
}

TEST_CASE("approx factor") {
    auto m = gen::one_two(6, 3);
    auto z = ZPolicyT<Rat>::default_numeric(Rat(3, 10), 6);
    auto ne = max_dsg(m);
    auto report = approx_factor(m, ne, Rat(3, 10), z);
    for (const auto& b : report.beta) CHECK(b == Rat(1));

    auto sc = ge_gap_instance(6, Rat(2));
    auto z2 = ZPolicyT<Rat>::default_numeric(Rat(2), 6);
    auto r2 = approx_factor(sc.metric, sc.profile, sc.alpha, z2);
    CHECK(r2.beta[sc.u] == Rat(26, 21));  // 13 / 10.5

    CHECK_THROWS_AS(approx_factor(sc.metric, sc.profile, sc.alpha, ZPolicyT<Rat>::lex()),
                    std::invalid_argument);
}

TEST_CASE("complete graph profile") {
    auto s = complete_graph_profile(3);
    for (int u = 0; u < 3; ++u) CHECK(s.strategies[u].size() == 2);
    auto m = gen::one_two(5, 9);
    auto full = complete_graph_profile(5);
    CHECK(routing_enabled(build_network(m, full)));
    Rat alpha(2);
    for (int u = 0; u < 5; ++u) {
        CHECK(agent_cost(m, full, u, alpha).finite_total() == (alpha + Rat(1)) * Rat(4));
    }
}

TEST_CASE("exact social optimum") {
    auto z = ZPolicyT<Rat>::lex();
    WeightedTree path;
    path.n = 3;
    path.edges = {{0, 1, Rat(1)}, {1, 2, Rat(2)}};
    auto mt = metric_from_tree(path);
    auto opt = social_optimum_exact(mt, Rat(1), z);
    CHECK(opt.profile == canonical_gt(path));

    auto m12 = metric_from_one_two(3, {{0, 1}, {1, 2}});
    auto opt12 = social_optimum_exact(m12, Rat(3, 10), z);
    auto maxcost = social_cost(m12, max_dsg(m12), Rat(3, 10));
    CHECK(compare_costs(opt12.cost, maxcost.total, z) == 0);

    auto m2 = metric_from_one_two(2, {{0, 1}});
    auto opt2 = social_optimum_exact(m2, Rat(1), z);
    CHECK(opt2.profile == complete_graph_profile(2));

    CHECK_THROWS_AS(social_optimum_exact(gen::one_two(6, 1), Rat(1), z), ExactLimitError);
}

TEST_CASE("exact limit refusals") {
    auto m = gen::one_two(6, 2);
    StrategyProfile s(6);
    CHECK_THROWS_AS(best_response_exact(m, s, 0, Rat(1), ZPolicyT<Rat>::lex(), 4),
                    ExactLimitError);
    CHECK_THROWS_AS(is_nash_equilibrium(m, s, Rat(1), ZPolicyT<Rat>::lex(), 4), ExactLimitError);
}

TEST_CASE("exact best response is locally optimal against single moves") {
    auto lex = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto m = gen::one_two(6, seed);
        auto s = gen::profile(6, seed * 23 + 9);
        for (int u = 0; u < 6; ++u) {
            auto br = best_response_exact(m, s, u, Rat(1), lex);
            StrategyProfile at_br = s;
            at_br.set(u, br.strategy);
            auto dm = deviation_matrix(m, at_br, u);
            CHECK(!first_improving_move(dm, at_br, Rat(1), lex).has_value());
        }
    }
}

TEST_CASE("random non-MaxDSG profiles are never NE below alpha = 1/2") {
    auto z = ZPolicyT<Rat>::lex();
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 15; ++trial) {
        auto m = gen::one_two(6, rng());
        auto ne = max_dsg(m);
        auto s = gen::profile(6, rng());
        if (s == ne) continue;
        CHECK(!is_nash_equilibrium(m, s, Rat(3, 10), z).verdict);
    }
}

TEST_CASE("deviation matrix entries dominate the direct distance") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto m = gen::one_two(6, seed);
        auto s = gen::profile(6, seed + 3);
        for (int u = 0; u < 6; ++u) {
            auto dm = deviation_matrix(m, s, u);
            for (int w = 0; w < 6; ++w)
                for (int v = 0; v < 6; ++v) {
                    if (w == u || v == u) continue;
                    if (dm.at(w, v)) CHECK(*dm.at(w, v) >= m.dist(u, v));
                }
            REQUIRE(dm.at(1 == u ? 2 : 1, 1 == u ? 2 : 1).has_value());
        }
    }
}

TEST_CASE("false verdicts carry strictly improving witnesses") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = gen::one_two(6, seed);
        auto s = gen::profile(6, seed + 17);
        auto ge = is_greedy_equilibrium(m, s, Rat(1), z);
        if (!ge.verdict) {
            REQUIRE(ge.agent.has_value());
            REQUIRE(ge.move.has_value());
            StrategyProfile improved = s;
            improved.set(*ge.agent, apply_move(s.strategies[*ge.agent], *ge.move));
            auto before = oracle::agent_cost_dfs(m, s, *ge.agent, Rat(1));
            auto after = oracle::agent_cost_dfs(m, improved, *ge.agent, Rat(1));
            CHECK(compare_costs(after, before, z) < 0);
        }
        auto ne = is_nash_equilibrium(m, s, Rat(1), z);
        if (!ne.verdict) {
            REQUIRE(ne.strategy.has_value());
            StrategyProfile improved = s;
            improved.set(*ne.agent, *ne.strategy);
            auto before = oracle::agent_cost_dfs(m, s, *ne.agent, Rat(1));
            auto after = oracle::agent_cost_dfs(m, improved, *ne.agent, Rat(1));
            CHECK(compare_costs(after, before, z) < 0);
        }
    }
}

TEST_CASE("degenerate single-agent instance") {
    auto m = metric_from_one_two(1, {});
    StrategyProfile s(1);
    auto z = ZPolicyT<Rat>::lex();
    CHECK(is_greedy_equilibrium(m, s, Rat(1), z).verdict);
    CHECK(is_nash_equilibrium(m, s, Rat(1), z).verdict);
    auto zq = ZPolicyT<Rat>::default_numeric(Rat(1), 1);
    auto report = approx_factor(m, s, Rat(1), zq);
    CHECK(report.beta[0] == Rat(1));
}
