#pragma once

// Independent brute-force oracles. Everything here recomputes results by
// plain enumeration, deliberately avoiding the engine's algorithms so the
// two paths can check each other.

#include <algorithm>
#include <optional>
#include <vector>

#include "gnf/game.hpp"
#include "gnf/one_two.hpp"
#include "gnf/tree.hpp"

namespace gnf::oracle {

// Shortest greedy path by depth-first enumeration of all strictly-descending
// paths. Distances to the target strictly decrease along a greedy path, so
// the recursion cannot revisit a node.
template <class S>
std::optional<S> greedy_distance_dfs(const NetworkT<S>& g, int u, int v) {
    if (u == v) return scalar_from_int<S>(0);
    std::optional<S> best;
    for (int y : g.out(u)) {
        if (!(g.metric->dist(y, v) < g.metric->dist(u, v))) continue;
        auto rest = greedy_distance_dfs(g, y, v);
        if (!rest) continue;
        S total = g.metric->dist(u, y) + *rest;
        if (!best || total < *best) best = total;
    }
    return best;
}

// Agent cost evaluated through full network rebuilds and the DFS oracle.
template <class S>
CostBreakdownT<S> agent_cost_dfs(const MetricSpaceT<S>& m, const StrategyProfile& s, int u,
                                 const S& alpha) {
    NetworkT<S> g = build_network(m, s);
    CostBreakdownT<S> cb;
    cb.alpha = alpha;
    cb.edge_count = static_cast<int>(s.strategies[u].size());
    for (int v = 0; v < m.size(); ++v) {
        if (v == u) continue;
        auto gd = greedy_distance_dfs(g, u, v);
        if (gd) {
            cb.finite_stretch_sum += *gd / m.dist(u, v);
        } else {
            ++cb.unreachable;
        }
    }
    return cb;
}

// Exact best response by enumerating all 2^(n-1) strategies of agent u and
// evaluating each with the DFS cost oracle.
template <class S>
std::pair<std::vector<int>, CostBreakdownT<S>> best_response_enumerate(
    const MetricSpaceT<S>& m, const StrategyProfile& s, int u, const S& alpha,
    const ZPolicyT<S>& z) {
    const int n = m.size();
    std::vector<int> others;
    for (int v = 0; v < n; ++v)
        if (v != u) others.push_back(v);
    std::vector<int> best_strategy;
    CostBreakdownT<S> best_cost;
    bool have = false;
    for (unsigned mask = 0; mask < (1u << others.size()); ++mask) {
        std::vector<int> targets;
        for (size_t j = 0; j < others.size(); ++j)
            if (mask & (1u << j)) targets.push_back(others[j]);
        StrategyProfile trial = s;
        trial.set(u, targets);
        auto cost = agent_cost_dfs(m, trial, u, alpha);
        int cmp = have ? compare_costs(cost, best_cost, z) : -1;
        bool better = !have || cmp < 0 ||
                      (cmp == 0 && (targets.size() < best_strategy.size() ||
                                    (targets.size() == best_strategy.size() &&
                                     targets < best_strategy)));
        if (better) {
            have = true;
            best_cost = cost;
            best_strategy = targets;
        }
    }
    return {best_strategy, best_cost};
}

inline int min_dominating_set_size(const SimpleGraph& g) {
    std::vector<unsigned> closed(g.n, 0);
    for (int v = 0; v < g.n; ++v) closed[v] = 1u << v;
    for (auto [a, b] : g.edges) {
        closed[a] |= 1u << b;
        closed[b] |= 1u << a;
    }
    const unsigned all = (g.n == 32) ? ~0u : ((1u << g.n) - 1);
    int best = g.n;
    for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
        unsigned covered = 0;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v)) covered |= closed[v];
        if (covered == all) best = std::min(best, __builtin_popcount(mask));
    }
    return best;
}

inline std::optional<int> min_set_cover_size(const SetCoverProblem& p) {
    const int m = static_cast<int>(p.sets.size());
    const unsigned all = (1u << p.n_elements) - 1;
    std::vector<unsigned> cover(m, 0);
    for (int j = 0; j < m; ++j)
        for (int e : p.sets[j]) cover[j] |= 1u << e;
    std::optional<int> best;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        unsigned covered = 0;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) covered |= cover[j];
        if (covered == all) {
            int size = __builtin_popcount(mask);
            if (!best || size < *best) best = size;
        }
    }
    return best;
}

// Tree path length by walking the unique path.
inline Rat tree_path_length(const WeightedTree& t, int u, int v) {
    std::vector<std::vector<std::pair<int, Rat>>> adj(t.n);
    for (const auto& e : t.edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    std::vector<int> parent(t.n, -2);
    std::vector<Rat> up(t.n);
    parent[u] = -1;
    std::vector<int> stack{u};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto& [y, w] : adj[x]) {
            if (parent[y] != -2) continue;
            parent[y] = x;
            up[y] = w;
            stack.push_back(y);
        }
    }
    Rat total;
    for (int x = v; x != u; x = parent[x]) total += up[x];
    return total;
}

}  // namespace gnf::oracle
