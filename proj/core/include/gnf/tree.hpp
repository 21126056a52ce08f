#pragma once

#include <vector>

#include "gnf/dynamics.hpp"
#include "gnf/metric.hpp"
#include "gnf/profile.hpp"

namespace gnf {

// The canonical network over a tree metric: every tree edge built in both
// directions. The unique greedy equilibrium.
StrategyProfile canonical_gt(const WeightedTree& t);

struct RootedView {
    int root = 0;
    std::vector<int> parent;                 // -1 at the root
    std::vector<std::vector<int>> children;
    std::vector<std::vector<int>> subtree;   // descendants incl. the node itself, sorted
    std::vector<int> depth;
    std::vector<int> bottom_up;              // deepest first, ids ascending within a depth

    // below(root) = the children subtrees of the root
    std::vector<std::vector<int>> below() const {
        std::vector<std::vector<int>> out;
        for (int c : children[root]) out.push_back(subtree[c]);
        return out;
    }
};

RootedView below_subtrees(const WeightedTree& t, int root);

// True iff s is exactly the canonical network; by the uniqueness of the
// greedy equilibrium on tree metrics this decides GE membership without any
// search. (alpha does not enter; kept for interface symmetry.)
bool verify_unique_ge(const WeightedTree& t, const StrategyProfile& s, const Rat& alpha);

// Explicit activation order under which best-response dynamics provably
// reaches the canonical network: one bottom-up pass (so every agent sees
// completed subtrees below it) followed by one top-down pass that settles
// the upward edges and sheds everything else.
ActivationSchedule weak_acyclicity_schedule(const WeightedTree& t, const StrategyProfile& s0);

struct SetCoverProblem {
    int n_elements = 0;
    std::vector<std::vector<int>> sets;
};

// Metric gadget in which the deviator's exact best response has size
// 1 + (minimum set cover). Emitted as a general metric completed by closure;
// the stated distance system is not realizable as a spanning-tree metric.
struct TreeSetCoverGadget {
    RatMetric metric;
    StrategyProfile background;
    int deviator = 0;   // u
    int v_node = 1;
    int c_node = 2;
    std::vector<int> set_nodes;
    std::vector<int> element_nodes;
    Rat alpha;
};

TreeSetCoverGadget tree_setcover_gadget(const SetCoverProblem& p);

}  // namespace gnf
