#include "gnf/io.hpp"

#include <charconv>
#include <fstream>

namespace gnf {

namespace {

std::string shortest_decimal(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw InputError("bad_number", "cannot format double");
    return std::string(buf, end);
}

[[noreturn]] void fail(const std::string& code, const std::string& message) {
    throw InputError(code, message);
}

}  // namespace

Rat rat_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long long>());
        if (j.is_string()) return Rat::parse(j.get<std::string>());
        if (j.is_number_float()) {
            std::string text = shortest_decimal(j.get<double>());
            if (text.find('e') != std::string::npos || text.find('E') != std::string::npos) {
                fail("bad_number", "value " + text + " has no short decimal form; use \"p/q\"");
            }
            return Rat::parse(text);
        }
    } catch (const std::invalid_argument& e) {
        fail("bad_number", e.what());
    }
    fail("bad_number", "expected a rational value (int, \"p/q\" or decimal)");
}

json rat_to_json(const Rat& r) {
    if (r.den() == 1) return r.num();
    return r.str();
}

namespace {

RatMetric metric_from_json_exact(const json& jm) {
    const std::string kind = jm.at("kind").get<std::string>();
    if (kind == "one_two") {
        int n = jm.at("n").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : jm.value("one_edges", json::array())) {
            edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        }
        return metric_from_one_two(n, edges);
    }
    if (kind == "tree") {
        WeightedTree t;
        for (const auto& e : jm.at("edges")) {
            t.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), rat_from_json(e.at(2))});
            t.n = std::max({t.n, t.edges.back().u + 1, t.edges.back().v + 1});
        }
        return metric_from_tree(t);
    }
    if (kind == "general") {
        const auto& rows = jm.at("dist");
        int n = static_cast<int>(rows.size());
        RatMetric m(n, MetricKind::general);
        for (int u = 0; u < n; ++u) {
            if (static_cast<int>(rows[u].size()) != n) fail("dimension_mismatch", "dist matrix is not square");
            for (int v = 0; v < n; ++v) {
                Rat d = rat_from_json(rows[u][v]);
                if (u < v) m.set_dist(u, v, d);
                if (u > v && !(m.dist(u, v) == d)) fail("bad_metric", "asymmetric dist matrix");
                if (u == v && !d.is_zero()) fail("bad_metric", "nonzero diagonal");
            }
        }
        return m;
    }
    if (kind == "partial") {
        PartialDistanceSpecT<Rat> spec;
        spec.n = jm.at("n").get<int>();
        for (const auto& e : jm.at("entries")) {
            spec.entries.push_back({e.at(0).get<int>(), e.at(1).get<int>(), rat_from_json(e.at(2))});
        }
        return metric_closure(spec);
    }
    fail("bad_kind", "unknown metric kind '" + kind + "'");
}

}  // namespace

Instance instance_from_json(const json& j) {
    if (!j.contains("metric")) fail("bad_instance", "missing 'metric'");
    const auto& jm = j.at("metric");
    const std::string kind = jm.at("kind").get<std::string>();
    Instance inst;
    if (kind == "euclidean") {
        std::vector<Vec2> pts;
        for (const auto& p : jm.at("points")) {
            pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
        inst.metric = metric_from_points(pts);
        inst.alpha_double = j.value("alpha", 1.0);
        inst.alpha_rat = Rat(0);
    } else {
        inst.metric = metric_from_json_exact(jm);
        inst.alpha_rat = j.contains("alpha") ? rat_from_json(j.at("alpha")) : Rat(1);
        inst.alpha_double = inst.alpha_rat.to_double();
    }
    if (!(inst.alpha_double > 0.0)) fail("bad_instance", "alpha must be positive");
    return inst;
}

json instance_to_json(const RatMetric& m, const Rat& alpha) {
    json jm;
    switch (m.kind()) {
        case MetricKind::one_two: {
            jm["kind"] = "one_two";
            jm["n"] = m.size();
            json edges = json::array();
            for (int u = 0; u < m.size(); ++u)
                for (int v = u + 1; v < m.size(); ++v)
                    if (m.dist(u, v) == Rat(1)) edges.push_back({u, v});
            jm["one_edges"] = edges;
            break;
        }
        case MetricKind::tree: {
            if (m.tree) {
                jm["kind"] = "tree";
                json edges = json::array();
                for (const auto& e : m.tree->edges) edges.push_back({e.u, e.v, rat_to_json(e.w)});
                jm["edges"] = edges;
                break;
            }
            [[fallthrough]];
        }
        default: {
            jm["kind"] = "general";
            json rows = json::array();
            for (int u = 0; u < m.size(); ++u) {
                json row = json::array();
                for (int v = 0; v < m.size(); ++v) row.push_back(rat_to_json(m.dist(u, v)));
                rows.push_back(row);
            }
            jm["dist"] = rows;
        }
    }
    json j;
    j["metric"] = jm;
    j["alpha"] = rat_to_json(alpha);
    return j;
}

json instance_to_json(const EuclidMetric& m, double alpha) {
    json jm;
    jm["kind"] = "euclidean";
    json pts = json::array();
    for (const auto& p : m.points) pts.push_back({p.x, p.y});
    jm["points"] = pts;
    json j;
    j["metric"] = jm;
    j["alpha"] = alpha;
    return j;
}

StrategyProfile profile_from_json(const json& j) {
    if (!j.contains("strategies")) fail("bad_profile", "missing 'strategies'");
    StrategyProfile s(static_cast<int>(j.at("strategies").size()));
    int u = 0;
    for (const auto& row : j.at("strategies")) {
        std::vector<int> targets;
        for (const auto& t : row) targets.push_back(t.get<int>());
        s.set(u++, targets);
    }
    return s;
}

json profile_to_json(const StrategyProfile& s) {
    json rows = json::array();
    for (const auto& row : s.strategies) rows.push_back(row);
    json j;
    j["strategies"] = rows;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io_error", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail("bad_json", std::string("parse error in '") + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail("io_error", "cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
    try {
        return instance_from_json(load_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail("bad_instance", std::string("in '") + path + "': " + e.what());
    } catch (const std::invalid_argument& e) {
        fail("bad_instance", std::string("in '") + path + "': " + e.what());
    }
}

StrategyProfile load_profile(const std::string& path) {
    try {
        return profile_from_json(load_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail("bad_profile", std::string("in '") + path + "': " + e.what());
    }
}

json scenario_report_to_json(const ScenarioReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(jc);
    }
    json j;
    j["scenario"] = r.id;
    j["pass"] = r.pass();
    j["checks"] = checks;
    return j;
}

}  // namespace gnf
