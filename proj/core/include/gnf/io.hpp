#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "gnf/equilibria.hpp"
#include "gnf/game.hpp"
#include "gnf/metric.hpp"
#include "gnf/profile.hpp"
#include "gnf/scenarios.hpp"

namespace gnf {

using json = nlohmann::ordered_json;

// Raised for malformed or inconsistent input files; the CLI maps it to a
// distinct error code.
class InputError : public std::runtime_error {
public:
    InputError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Exact values travel as strings ("57/50" or "1.14") or integers. A raw JSON
// float is interpreted through its shortest round-trip decimal form, which
// recovers the intended rational for human-written values like 1.14.
Rat rat_from_json(const json& j);
json rat_to_json(const Rat& r);  // "p/q" string, or plain integer

// Instance file: {"metric": {"kind": ..., ...}, "alpha": ...}
struct Instance {
    std::variant<RatMetric, EuclidMetric> metric;
    Rat alpha_rat;
    double alpha_double = 0.0;

    bool exact() const { return std::holds_alternative<RatMetric>(metric); }
    int size() const {
        return std::visit([](const auto& m) { return m.size(); }, metric);
    }
};

Instance instance_from_json(const json& j);
Instance load_instance(const std::string& path);
json instance_to_json(const RatMetric& m, const Rat& alpha);
json instance_to_json(const EuclidMetric& m, double alpha);

StrategyProfile profile_from_json(const json& j);
json profile_to_json(const StrategyProfile& s);
StrategyProfile load_profile(const std::string& path);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

template <class S>
json cost_breakdown_to_json(const CostBreakdownT<S>& cb) {
    json j;
    j["unreachable"] = cb.unreachable;
    if constexpr (scalar_traits<S>::exact) {
        j["stretch_sum"] = cb.finite_stretch_sum.str();
        j["edges"] = cb.edge_count;
        j["total"] = cb.finite_total().str();
    } else {
        j["stretch_sum"] = cb.finite_stretch_sum;
        j["edges"] = cb.edge_count;
        j["total"] = cb.finite_total();
    }
    return j;
}

template <class S>
json equilibrium_report_to_json(const EquilibriumReportT<S>& r, const std::string& kind) {
    json j;
    j["check"] = kind;
    j["verdict"] = r.verdict;
    if (!r.verdict) {
        j["agent"] = *r.agent;
        if (r.move) j["improving_move"] = r.move->str();
        if (r.strategy) j["improving_strategy"] = *r.strategy;
        j["current_cost"] = cost_breakdown_to_json(r.current);
        j["improved_cost"] = cost_breakdown_to_json(r.improved);
    }
    return j;
}

json scenario_report_to_json(const ScenarioReport& r);

}  // namespace gnf
