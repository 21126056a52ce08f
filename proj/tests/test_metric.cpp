#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gnf/metric.hpp"
#include "gnf/scenarios.hpp"
#include "oracles.hpp"

using namespace gnf;

TEST_CASE("validate_metric accepts and rejects") {
    RatMetric ok(2, MetricKind::general);
    ok.set_dist(0, 1, Rat(1));
    CHECK(validate_metric(ok).ok);

    RatMetric bad(3, MetricKind::general);
    bad.set_dist(0, 1, Rat(1));
    bad.set_dist(1, 2, Rat(1));
    bad.set_dist(0, 2, Rat(3));  // 3 > 1 + 1
    auto report = validate_metric(bad);
    CHECK(!report.ok);
    bool found = false;
    for (const auto& v : report.violations) {
        if (v.kind == MetricViolation::Kind::triangle && v.u == 0 && v.w == 2 && v.v == 1) {
            found = true;
        }
    }
    CHECK(found);

    RatMetric zero(2, MetricKind::general);
    auto zr = validate_metric(zero);  // off-diagonal zero
    CHECK(!zr.ok);
}

TEST_CASE("fig-8 distance matrix is a metric at eps = 0.001") {
    auto sc = no_ge_instance(Rat(1, 1000));
    CHECK(validate_metric(sc.metric).ok);
}

TEST_CASE("metric_from_one_two") {
    auto m = metric_from_one_two(3, {{0, 1}});
    CHECK(m.dist(0, 1) == Rat(1));
    CHECK(m.dist(0, 2) == Rat(2));
    CHECK(m.dist(1, 2) == Rat(2));
    CHECK(m.kind() == MetricKind::one_two);

    auto m2 = metric_from_one_two(2, {});
    CHECK(m2.dist(0, 1) == Rat(2));

    auto m4 = metric_from_one_two(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(m4.dist(0, 2) == Rat(2));
    CHECK(m4.dist(0, 3) == Rat(2));
    CHECK(m4.dist(1, 3) == Rat(2));

    CHECK_THROWS_AS(metric_from_one_two(2, {{0, 5}}), std::invalid_argument);
    CHECK(validate_metric(m4).ok);
}

TEST_CASE("metric_from_tree") {
    WeightedTree path;
    path.n = 3;
    path.edges = {{0, 1, Rat(2)}, {1, 2, Rat(3)}};
    auto m = metric_from_tree(path);
    CHECK(m.dist(0, 2) == Rat(5));
    CHECK(m.kind() == MetricKind::tree);
    CHECK(m.tree.has_value());

    WeightedTree star;
    star.n = 4;
    star.edges = {{0, 1, Rat(1)}, {0, 2, Rat(1)}, {0, 3, Rat(1)}};
    auto ms = metric_from_tree(star);
    for (int i = 1; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(ms.dist(i, j) == Rat(2));

    WeightedTree single;
    single.n = 2;
    single.edges = {{0, 1, Rat(7)}};
    CHECK(metric_from_tree(single).dist(0, 1) == Rat(7));

    WeightedTree cyclic;
    cyclic.n = 3;
    cyclic.edges = {{0, 1, Rat(1)}, {1, 0, Rat(1)}};
    CHECK_THROWS_AS(metric_from_tree(cyclic), std::invalid_argument);
}

TEST_CASE("tree metric equals brute-force path summation") {
    for (std::uint64_t seed : {1, 2, 3}) {
        WeightedTree t = gen::tree(7, seed);
        auto m = metric_from_tree(t);
        for (int u = 0; u < 7; ++u)
            for (int v = 0; v < 7; ++v)
                if (u != v) CHECK(m.dist(u, v) == oracle::tree_path_length(t, u, v));
        CHECK(validate_metric(m).ok);
    }
}

TEST_CASE("metric_from_points") {
    auto m = metric_from_points({{0, 0}, {3, 4}});
    CHECK(m.dist(0, 1) == doctest::Approx(5.0));

    auto tri = metric_from_points({{0, 0}, {1, 0}, {0, 1}});
    CHECK(tri.dist(1, 2) == doctest::Approx(std::sqrt(2.0)));

    // the fig-1 chain hops
    auto f = metric_from_points({{0, 0}, {1, 1}, {3, 1}, {5, 1}, {6, 0}});
    CHECK(f.dist(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(f.dist(1, 2) == doctest::Approx(2.0));
    CHECK(f.dist(2, 3) == doctest::Approx(2.0));
    CHECK(f.dist(3, 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(metric_from_points({{1, 1}, {1, 1}}), std::invalid_argument);
    CHECK(validate_metric(f).ok);
}

TEST_CASE("metric_closure") {
    PartialDistanceSpecT<Rat> spec;
    spec.n = 3;
    spec.entries = {{0, 1, Rat(1)}, {1, 2, Rat(1)}};
    auto m = metric_closure(spec);
    CHECK(m.dist(0, 2) == Rat(2));
    CHECK(validate_metric(m).ok);

    PartialDistanceSpecT<Rat> disconnected;
    disconnected.n = 3;
    disconnected.entries = {{0, 1, Rat(5)}};
    CHECK_THROWS_AS(metric_closure(disconnected), std::invalid_argument);

    // a specified entry the closure undercuts is reported, not shortened
    PartialDistanceSpecT<Rat> bad;
    bad.n = 3;
    bad.entries = {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {0, 2, Rat(5)}};
    MetricValidation report;
    metric_closure(bad, &report);
    CHECK(!report.ok);
    CHECK_THROWS_AS(metric_closure(bad), std::invalid_argument);
}

TEST_CASE("closure of random sparse specs is always a metric") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto spec = gen::sparse_spec(6, seed);
        auto m = metric_closure(spec);
        CHECK(validate_metric(m).ok);
    }
}
