#include <doctest.h>

#include "generators.hpp"
#include "gnf/io.hpp"

using namespace gnf;

TEST_CASE("rational json forms") {
    CHECK(rat_from_json(json::parse("3")) == Rat(3));
    CHECK(rat_from_json(json::parse("\"57/50\"")) == Rat(57, 50));
    CHECK(rat_from_json(json::parse("\"1.14\"")) == Rat(57, 50));
    CHECK(rat_from_json(json::parse("1.14")) == Rat(57, 50));  // shortest decimal recovery
    CHECK(rat_from_json(json::parse("2.5")) == Rat(5, 2));
    CHECK_THROWS_AS(rat_from_json(json::parse("\"x\"")), InputError);
    CHECK(rat_to_json(Rat(4)) == json(4));
    CHECK(rat_to_json(Rat(1, 3)) == json("1/3"));
}

TEST_CASE("instance round trips preserve the metric") {
    SUBCASE("one_two") {
        auto m = gen::one_two(6, 3);
        auto j = instance_to_json(m, Rat(3, 5));
        auto inst = instance_from_json(j);
        REQUIRE(inst.exact());
        const auto& back = std::get<RatMetric>(inst.metric);
        CHECK(back.kind() == MetricKind::one_two);
        for (int u = 0; u < 6; ++u)
            for (int v = 0; v < 6; ++v) CHECK(back.dist(u, v) == m.dist(u, v));
        CHECK(inst.alpha_rat == Rat(3, 5));
    }
    SUBCASE("tree") {
        auto t = gen::tree(5, 4);
        auto m = metric_from_tree(t);
        auto inst = instance_from_json(instance_to_json(m, Rat(1)));
        const auto& back = std::get<RatMetric>(inst.metric);
        CHECK(back.kind() == MetricKind::tree);
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v) CHECK(back.dist(u, v) == m.dist(u, v));
    }
    SUBCASE("general with exact entries") {
        auto m = metric_closure(gen::sparse_spec(5, 8));
        auto inst = instance_from_json(instance_to_json(m, Rat(2)));
        const auto& back = std::get<RatMetric>(inst.metric);
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v) CHECK(back.dist(u, v) == m.dist(u, v));
    }
    SUBCASE("euclidean") {
        auto m = metric_from_points(gen::points(5, 2));
        auto inst = instance_from_json(instance_to_json(m, 1.5));
        REQUIRE(!inst.exact());
        const auto& back = std::get<EuclidMetric>(inst.metric);
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v)
                CHECK(back.dist(u, v) == doctest::Approx(m.dist(u, v)).epsilon(1e-12));
    }
    SUBCASE("partial") {
        json j;
        j["metric"]["kind"] = "partial";
        j["metric"]["n"] = 3;
        j["metric"]["entries"] = json::array({{0, 1, 1}, {1, 2, "3/2"}});
        j["alpha"] = "0.6";
        auto inst = instance_from_json(j);
        const auto& m = std::get<RatMetric>(inst.metric);
        CHECK(m.dist(0, 2) == Rat(5, 2));
        CHECK(inst.alpha_rat == Rat(3, 5));
    }
}

TEST_CASE("profile round trip and canonical ordering") {
    auto s = gen::profile(6, 11);
    auto j = profile_to_json(s);
    CHECK(profile_from_json(j) == s);
    CHECK(j.dump() == profile_to_json(profile_from_json(j)).dump());
}

TEST_CASE("input errors carry codes") {
    try {
        load_instance("/nonexistent/path.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(e.code() == "io_error");
    }
    try {
        instance_from_json(json::parse("{}"));
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(e.code() == "bad_instance");
    }
    json bad;
    bad["metric"]["kind"] = "general";
    bad["metric"]["dist"] = json::array({{0, 1}, {1, 0}, {9, 9}});
    CHECK_THROWS_AS(instance_from_json(bad), InputError);
}
