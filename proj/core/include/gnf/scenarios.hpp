#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gnf/dynamics.hpp"
#include "gnf/metric.hpp"
#include "gnf/profile.hpp"
#include "gnf/tree.hpp"

namespace gnf {

struct ScenarioCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ScenarioReport {
    std::string id;
    std::vector<ScenarioCheck> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct ScenarioParams {
    Rat epsilon = Rat(1, 1000);
    int n = 6;
    Rat alpha = Rat(2);
    int k = 8;
    double alpha_epsilon = 0.5;
    int threads = 1;
    bool quick = false;  // sampled instead of exhaustive searches
};

std::vector<std::string> scenario_ids();
ScenarioReport run_scenario(const std::string& id, const ScenarioParams& params);

// ---- Concrete instance builders -----------------------------------------

// Euclidean example with exactly two greedy u-v paths; the chain through the
// upper points is the shortest one, and the shortest network path (via w) is
// not greedy at all.
struct Fig1Scenario {
    EuclidMetric metric;
    StrategyProfile profile;
    int u = 0, a = 1, b = 2, c = 3, v = 4, y = 5, z = 6, w = 7;
    double expected_gd = 0.0;
    double expected_stretch = 0.0;
};
Fig1Scenario fig1_instance();

// 12-agent 1-2 metric with a scripted 4-step improving-response cycle where
// each step improves the mover by exactly Z - 1.
struct IrcScenario {
    RatMetric metric;
    StrategyProfile start;
    int agent_u = 0, agent_v = 1;
    std::vector<std::pair<int, std::vector<int>>> script;  // (agent, next strategy)
    Rat alpha;
};
IrcScenario irc_instance(const Rat& alpha = Rat(1));

// Star-like 1-2 family that is in GE but an Omega(alpha*n/(alpha+n)) factor
// away from a best response for the hub agent u.
struct GeGapScenario {
    RatMetric metric;
    StrategyProfile profile;
    int u = 0, v = 1, w = 2;
    Rat alpha;
    Rat expected_cost_u;
    Rat expected_deviation_cost;
    std::vector<int> deviation;  // {v, w}
};
GeGapScenario ge_gap_instance(int n, const Rat& alpha);

// 5-agent general metric with no greedy equilibrium at alpha = 0.6.
struct NoGeScenario {
    RatMetric metric;
    Rat alpha;
    Rat epsilon;
    int a = 0, b = 1, c = 2, y = 3, z = 4;
};
NoGeScenario no_ge_instance(const Rat& epsilon = Rat(1, 1000));

// Exhaustive count of greedy equilibria over all (2^(n-1))^n profiles.
// Supported for n <= 5.
long long exhaustive_ge_count(const RatMetric& m, const Rat& alpha, int threads = 1);

// 3-SAT (<= 3 occurrences per variable) embedded as a general metric whose
// greedy/Nash equilibria encode satisfying assignments.
struct SatFormula {
    int n_vars = 0;
    std::vector<std::vector<int>> clauses;  // 1-based literals, negative = negated

    bool satisfied_by(const std::vector<bool>& assignment) const;
};
SatFormula default_sat_formula();

struct SatScenario {
    RatMetric metric;
    Rat alpha;
    Rat epsilon;
    SatFormula formula;
    int y = 0, z = 1, d = 2;
    std::vector<std::array<int, 3>> clause_nodes;  // a_i, b_i, c_i
    std::vector<std::pair<int, int>> var_nodes;    // t_u, f_u

    // Literal node of clause occurrences at distance 1.6 - eps.
    std::vector<std::pair<int, int>> literal_adjacency;  // (c_i node, literal node)
};
SatScenario sat_reduction(const SatFormula& formula, const Rat& epsilon = Rat(1, 1000));

// The constructive equilibrium profile for a satisfying assignment.
StrategyProfile sat_equilibrium_profile(const SatScenario& scenario,
                                        const std::vector<bool>& assignment);

// Euclidean set-cover gadget: two point clusters of diameter eps at the
// paper-exact center distances; the deviator's best response has size
// 1 + (minimum set cover).
struct EuclidSetCoverGadget {
    std::vector<Vec2> points;
    EuclidMetric metric;
    StrategyProfile background;
    int deviator = 0;
    int v_node = 1;
    std::vector<int> set_nodes;
    std::vector<int> element_nodes;
    double alpha = 4.1;
    double epsilon = 1e-3;
};
EuclidSetCoverGadget euclid_setcover_gadget(const SetCoverProblem& p, double epsilon = 1e-3);

}  // namespace gnf
