#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "gnf/equilibria.hpp"
#include "gnf/metric.hpp"
#include "gnf/profile.hpp"

namespace gnf {

enum class SolveMode { exact, greedy };

// Out-neighborhood structure of an agent in a network over a 1-2 metric:
// W1 = targets at distance 1, W1->1 = nodes reachable by two built 1-edges,
// W2 = targets at distance 2, split into W2+ (also in W1->1) and W2-.
struct NeighborhoodSets {
    std::vector<int> w1;
    std::vector<int> w1to1;
    std::vector<int> w2;
    std::vector<int> w2plus;
    std::vector<int> w2minus;
};

NeighborhoodSets neighborhood_sets(const RatMetric& m, const StrategyProfile& s, int u);

struct DsgVerdict {
    bool all_one_edges = true;        // (i)  every 1-edge built in both directions
    bool dominating = true;           // (ii) every out-neighborhood dominates G^1_{-u}
    bool w2plus_irreducible = true;   // (iii) no deletion/swap shrinks |W2+| and keeps (ii)

    bool is_dsg() const { return all_one_edges && dominating && w2plus_irreducible; }

    std::optional<std::pair<int, int>> missing_one_edge;          // (u, v)
    std::optional<std::pair<int, int>> undominated;               // (agent, node)
    std::optional<std::tuple<int, int, int>> reducible;           // (agent, v in W2+, swap target or -1)
};

DsgVerdict is_dsg(const RatMetric& m, const StrategyProfile& s);

// All 1-edges plus every 2-edge except those short-cut by two 1-edges. Unique.
StrategyProfile max_dsg(const RatMetric& m);

// All 1-edges plus per agent a minimum set of 2-edges that dominates
// G^1_{-u}; among minimum-size sets, the one with the fewest W2+ edges (so
// the result is a proper DSG) and then the lexicographically smallest.
StrategyProfile min_dsg(const RatMetric& m, SolveMode mode = SolveMode::exact,
                        int exact_limit = 20);

// Per agent minimizes (alpha - 1/2)|W2(u)| + (1/2)|W2+(u)| subject to
// domination; for alpha < 1/2 this is the MaxDSG.
StrategyProfile bdsg(const RatMetric& m, const Rat& alpha, SolveMode mode = SolveMode::exact,
                     int exact_limit = 20);

// Polynomial-time approximate NE for alpha > 1/2: MaxDSG rows rebuilt with
// the greedy weighted-cover heuristic (weight alpha on W2+ candidates,
// alpha - 1/2 on W2- candidates), then repaired to a valid DSG.
StrategyProfile log_approx_ne(const RatMetric& m, const Rat& alpha);

// Polynomial best response for alpha <= 1/2: the agent's MaxDSG row.
std::vector<int> one_two_best_response(const RatMetric& m, const StrategyProfile& s, int u,
                                       const Rat& alpha);

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Embeds a graph into a 1-2 metric plus one extra agent u whose exact best
// response picks a minimum dominating set of the graph.
struct DominatingSetGadget {
    RatMetric metric;
    StrategyProfile profile;
    int deviator;
    Rat alpha;
};

DominatingSetGadget dominating_set_gadget(const SimpleGraph& g);

}  // namespace gnf
