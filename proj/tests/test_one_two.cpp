#include <doctest.h>

#include "generators.hpp"
#include "gnf/dynamics.hpp"
#include "gnf/one_two.hpp"
#include "oracles.hpp"

using namespace gnf;

namespace {

// Triangle with d(0,1) = d(1,2) = 1 and d(0,2) = 2.
RatMetric triangle() { return metric_from_one_two(3, {{0, 1}, {1, 2}}); }

// 1-edge path 0-1-2-3.
RatMetric path4() { return metric_from_one_two(4, {{0, 1}, {1, 2}, {2, 3}}); }

}  // namespace

TEST_CASE("neighborhood sets") {
    auto m = triangle();
    auto s = max_dsg(m);
    auto sets = neighborhood_sets(m, s, 0);
    CHECK(sets.w1 == std::vector<int>{1});
    CHECK(sets.w1to1 == std::vector<int>{2});
    CHECK(sets.w2.empty());

    s.add_edge(0, 2);
    sets = neighborhood_sets(m, s, 0);
    CHECK(sets.w2 == std::vector<int>{2});
    CHECK(sets.w2plus == std::vector<int>{2});
    CHECK(sets.w2minus.empty());

    StrategyProfile isolated(3);
    auto empty_sets = neighborhood_sets(m, isolated, 0);
    CHECK(empty_sets.w1.empty());
    CHECK(empty_sets.w2.empty());
    CHECK(empty_sets.w1to1.empty());

    auto euclid = metric_from_points({{0, 0}, {1, 0}});
    (void)euclid;  // wrong metric kind is rejected
    CHECK_THROWS_AS(neighborhood_sets(metric_closure(PartialDistanceSpecT<Rat>{
                                          2, {{0, 1, Rat(5)}}}),
                                      isolated, 0),
                    std::invalid_argument);
}

TEST_CASE("dsg verdict flags") {
    auto m = triangle();
    CHECK(is_dsg(m, max_dsg(m)).is_dsg());

    // missing 1-edge
    auto s = max_dsg(m);
    s.remove_edge(0, 1);
    auto verdict = is_dsg(m, s);
    CHECK(!verdict.all_one_edges);
    REQUIRE(verdict.missing_one_edge.has_value());
    CHECK(*verdict.missing_one_edge == std::make_pair(0, 1));

    // condition (iii): an edge into W2+ swappable to an uncovered W2- node
    auto mp = path4();
    StrategyProfile bad = min_dsg(mp);
    bad.set(0, {1, 2});  // {1,2} dominates, but swapping (0,2)->(0,3) keeps domination
    auto v3 = is_dsg(mp, bad);
    CHECK(v3.all_one_edges);
    CHECK(v3.dominating);
    CHECK(!v3.w2plus_irreducible);
    REQUIRE(v3.reducible.has_value());
    CHECK(std::get<0>(*v3.reducible) == 0);
    CHECK(std::get<1>(*v3.reducible) == 2);
    CHECK(std::get<2>(*v3.reducible) == 3);
}

TEST_CASE("max dsg") {
    // star: only the 6 center edges, every leaf pair短-cut through the center
    auto star = metric_from_one_two(4, {{0, 1}, {0, 2}, {0, 3}});
    auto s = max_dsg(star);
    CHECK(s.edge_count() == 6);
    for (int leaf = 1; leaf < 4; ++leaf) CHECK(s.strategies[leaf] == std::vector<int>{0});

    auto pair = metric_from_one_two(2, {});
    auto sp = max_dsg(pair);
    CHECK(sp.strategies[0] == std::vector<int>{1});
    CHECK(sp.strategies[1] == std::vector<int>{0});

    auto cycle = metric_from_one_two(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto sc = max_dsg(cycle);
    CHECK(sc.edge_count() == 8);
    CHECK(!sc.has_edge(0, 2));
    CHECK(!sc.has_edge(1, 3));
}

TEST_CASE("min dsg picks one swap-safe 2-edge on the path") {
    auto m = path4();
    auto s = min_dsg(m);
    // agent 0 needs exactly one 2-edge; the swap-safe choice is node 3
    std::vector<int> two_edges;
    for (int v : s.strategies[0])
        if (m.dist(0, v) == Rat(2)) two_edges.push_back(v);
    CHECK(two_edges == std::vector<int>{3});
    CHECK(is_dsg(m, s).is_dsg());

    auto star = metric_from_one_two(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(min_dsg(star) == max_dsg(star));

    auto complete = metric_from_one_two(3, {{0, 1}, {0, 2}, {1, 2}});
    auto scm = min_dsg(complete);
    CHECK(scm.edge_count() == 6);  // no 2-edges exist at all
}

TEST_CASE("bdsg") {
    auto m = path4();
    auto s = bdsg(m, Rat(1));
    std::vector<int> two_edges;
    for (int v : s.strategies[0])
        if (m.dist(0, v) == Rat(2)) two_edges.push_back(v);
    CHECK(two_edges == std::vector<int>{3});  // b = 1/2 beats the W2+ pick at b = 1

    CHECK(bdsg(m, Rat(3, 10)) == max_dsg(m));

    auto complete = metric_from_one_two(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(bdsg(complete, Rat(2)).edge_count() == 6);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto mm = gen::one_two(6, seed);
        for (const Rat& alpha : {Rat(1, 2), Rat(3, 5), Rat(1), Rat(2)}) {
            auto prof = bdsg(mm, alpha);
            CHECK(is_dsg(mm, prof).is_dsg());
            CHECK(routing_enabled(build_network(mm, prof)));
        }
    }
}

TEST_CASE("log-approx construction is a DSG with enabled routing") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen::one_two(7, seed);
        for (const Rat& alpha : {Rat(1), Rat(3)}) {
            auto s = log_approx_ne(m, alpha);
            CHECK(is_dsg(m, s).is_dsg());
            CHECK(routing_enabled(build_network(m, s)));
        }
    }
    auto star = metric_from_one_two(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(log_approx_ne(star, Rat(1)) == max_dsg(star));
    CHECK_THROWS_AS(log_approx_ne(star, Rat(1, 2)), std::invalid_argument);
}

TEST_CASE("log-approx cost is close to the exact best response on the path") {
    auto m = path4();
    auto s = log_approx_ne(m, Rat(1));
    auto z = ZPolicyT<Rat>::default_numeric(Rat(1), 4);
    auto report = approx_factor(m, s, Rat(1), z);
    // H_4 is about 2.08; the construction stays well inside O(log n)
    CHECK(report.beta_max.to_double() <= 2.09);
}

TEST_CASE("polynomial best response for small alpha") {
    auto m = triangle();
    StrategyProfile s(3);
    s.set(1, {0, 2});
    s.set(2, {0, 1});
    CHECK(one_two_best_response(m, s, 0, Rat(1, 2)) == std::vector<int>{1});
    CHECK_THROWS_AS(one_two_best_response(m, s, 0, Rat(1)), std::invalid_argument);

    auto pair = metric_from_one_two(2, {});
    CHECK(one_two_best_response(pair, StrategyProfile(2), 0, Rat(1, 2)) ==
          std::vector<int>{1});

    auto star = metric_from_one_two(4, {{0, 1}, {0, 2}, {0, 3}});
    StrategyProfile sp = max_dsg(star);
    CHECK(one_two_best_response(star, sp, 1, Rat(1, 4)) == std::vector<int>{0});
}

TEST_CASE("max dsg is the unique NE for small alpha") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto m = gen::one_two(4, seed);
        auto ne = max_dsg(m);
        CHECK(is_nash_equilibrium(m, ne, Rat(3, 10), z).verdict);
        // exhaustive over all other profiles at n = 4
        const int per = 1 << 3;
        std::vector<int> mask(4, 0);
        int checked = 0;
        for (;;) {
            StrategyProfile s(4);
            for (int u = 0; u < 4; ++u) {
                std::vector<int> row;
                for (int j = 0; j < 3; ++j)
                    if (mask[u] & (1 << j)) row.push_back(j < u ? j : j + 1);
                s.set(u, row);
            }
            if (!(s == ne) && is_nash_equilibrium(m, s, Rat(3, 10), z).verdict) {
                ++checked;  // would be a second NE
            }
            int i = 0;
            while (i < 4 && ++mask[i] == per) mask[i++] = 0;
            if (i == 4) break;
        }
        CHECK(checked == 0);
    }
}

TEST_CASE("dominating set gadget matches the brute-force optimum") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        SimpleGraph g = gen::graph(6, seed);
        auto gadget = dominating_set_gadget(g);
        auto br = best_response_exact(gadget.metric, gadget.profile, gadget.deviator,
                                      gadget.alpha, z);
        CHECK(static_cast<int>(br.strategy.size()) == oracle::min_dominating_set_size(g));
    }
    auto k3 = dominating_set_gadget({3, {{0, 1}, {1, 2}, {0, 2}}});
    auto br = best_response_exact(k3.metric, k3.profile, k3.deviator, k3.alpha, z);
    CHECK(br.strategy.size() == 1);
}

TEST_CASE("closed-form agent cost on DSG profiles") {
    // c_u = (a+1)|V1| + |V2+| + (a-1/2)|W2-| + 3/2 |V2-| + a|W2+|
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = gen::one_two(7, seed);
        for (const Rat& alpha : {Rat(3, 5), Rat(2)}) {
            for (const auto& s : {max_dsg(m), bdsg(m, alpha), min_dsg(m)}) {
                for (int u = 0; u < 7; ++u) {
                    auto sets = neighborhood_sets(m, s, u);
                    long long v1 = 0, v2plus = 0, v2minus = 0;
                    std::vector<char> two_step(7, 0);
                    for (int x = 0; x < 7; ++x) {
                        if (x == u) continue;
                        if (m.dist(u, x) == Rat(1)) {
                            ++v1;
                            continue;
                        }
                        bool plus = false;
                        for (int y = 0; y < 7 && !plus; ++y)
                            if (y != u && y != x && m.dist(u, y) == Rat(1) &&
                                m.dist(y, x) == Rat(1))
                                plus = true;
                        (plus ? v2plus : v2minus) += 1;
                    }
                    Rat expect = (alpha + Rat(1)) * Rat(v1) + Rat(v2plus) +
                                 (alpha - Rat(1, 2)) *
                                     Rat(static_cast<long long>(sets.w2minus.size())) +
                                 Rat(3, 2) * Rat(v2minus) +
                                 alpha * Rat(static_cast<long long>(sets.w2plus.size()));
                    auto cb = agent_cost(m, s, u, alpha);
                    CHECK(cb.unreachable == 0);
                    CHECK(cb.finite_total() == expect);
                }
            }
        }
    }
}

TEST_CASE("greedy-equilibrium endpoints of dynamics are DSGs") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto m = gen::one_two(5, seed);
        auto s0 = gen::profile(5, seed + 9);
        auto trace = run_improving_dynamics(m, s0, Rat(1), z, ActivationSchedule::round_robin(),
                                            MoveSource::single_moves, 400);
        if (trace.status != DynamicsStatus::converged) continue;
        CHECK(is_dsg(m, trace.final_profile).is_dsg());
    }
}

TEST_CASE("alpha = 1/2 boundary: every DSG is a GE, BDSG(1/2) is a NE") {
    auto z = ZPolicyT<Rat>::lex();
    const Rat half(1, 2);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = gen::one_two(6, seed);
        CHECK(is_greedy_equilibrium(m, max_dsg(m), half, z).verdict);
        CHECK(is_greedy_equilibrium(m, min_dsg(m), half, z).verdict);
        CHECK(is_nash_equilibrium(m, bdsg(m, half), half, z).verdict);
    }
}

TEST_CASE("MinDSG is a greedy equilibrium above alpha = 1/2") {
    auto z = ZPolicyT<Rat>::lex();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = gen::one_two(6, seed);
        auto s = min_dsg(m);
        CHECK(is_greedy_equilibrium(m, s, Rat(2), z).verdict);
        CHECK(is_greedy_equilibrium(m, s, Rat(7, 10), z).verdict);
    }
}
