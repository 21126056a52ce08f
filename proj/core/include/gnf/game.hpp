#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gnf/metric.hpp"
#include "gnf/profile.hpp"

namespace gnf {

// Directed weighted network induced by a strategy profile over a metric
// space. Edge lengths are exactly the metric distances.
//
// descent_margin is zero in the game itself (hops must get strictly closer);
// a positive margin tightens the descent test to d(y,t) + margin < d(x,t)
// for robustness experiments on float metrics.
template <class S>
struct NetworkT {
    const MetricSpaceT<S>* metric = nullptr;
    StrategyProfile profile;
    S descent_margin{};

    int n() const { return metric->size(); }
    const std::vector<int>& out(int u) const { return profile.strategies[u]; }
    bool descends(int x, int y, int target) const {
        return metric->dist(y, target) + descent_margin < metric->dist(x, target);
    }
};

template <class S>
NetworkT<S> build_network(const MetricSpaceT<S>& m, const StrategyProfile& s,
                          const S& descent_margin = S{}) {
    s.validate(m.size());
    return NetworkT<S>{&m, s, descent_margin};
}

template <class S>
struct GreedyResult {
    bool reachable = false;
    S length{};
    std::vector<int> witness;  // u ... v when reachable
};

// Shortest greedy distances from every source to one fixed target. Only
// edges (x,y) with d(y,t) < d(x,t) are usable, which makes the restricted
// graph acyclic under the ordering by d(.,t); one sweep in increasing
// distance-to-target order settles every node.
template <class S>
void greedy_to_target(const NetworkT<S>& g, int target, std::vector<std::optional<S>>& out,
                      std::vector<int>* pred = nullptr) {
    const auto& m = *g.metric;
    const int n = m.size();
    out.assign(n, std::nullopt);
    if (pred) pred->assign(n, -1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (m.dist(a, target) < m.dist(b, target)) return true;
        if (m.dist(b, target) < m.dist(a, target)) return false;
        return a < b;
    });
    out[target] = scalar_from_int<S>(0);
    for (int x : order) {
        if (x == target) continue;
        for (int y : g.out(x)) {
            if (!g.descends(x, y, target)) continue;
            if (!out[y]) continue;
            S cand = m.dist(x, y) + *out[y];
            if (!out[x] || cand < *out[x]) {
                out[x] = cand;
                if (pred) (*pred)[x] = y;
            }
        }
    }
}

template <class S>
GreedyResult<S> greedy_distance(const NetworkT<S>& g, int u, int v) {
    if (u == v) throw std::invalid_argument("greedy distance needs distinct endpoints");
    std::vector<std::optional<S>> dist;
    std::vector<int> pred;
    greedy_to_target(g, v, dist, &pred);
    GreedyResult<S> r;
    if (!dist[u]) return r;
    r.reachable = true;
    r.length = *dist[u];
    for (int x = u; x != v; x = pred[x]) r.witness.push_back(x);
    r.witness.push_back(v);
    return r;
}

// gd(u,v) for all ordered pairs; entry std::nullopt means unreachable.
template <class S>
struct AllPairsGreedy {
    int n = 0;
    std::vector<std::optional<S>> gd;  // row-major [u][v]

    const std::optional<S>& at(int u, int v) const { return gd[size_t(u) * n + v]; }
};

template <class S>
AllPairsGreedy<S> all_pairs_greedy(const NetworkT<S>& g) {
    const int n = g.n();
    AllPairsGreedy<S> r;
    r.n = n;
    r.gd.assign(size_t(n) * n, std::nullopt);
    std::vector<std::optional<S>> column;
    for (int v = 0; v < n; ++v) {
        greedy_to_target(g, v, column);
        for (int u = 0; u < n; ++u) r.gd[size_t(u) * n + v] = column[u];
    }
    return r;
}

template <class S>
bool routing_enabled(const NetworkT<S>& g) {
    const int n = g.n();
    std::vector<std::optional<S>> column;
    for (int v = 0; v < n; ++v) {
        greedy_to_target(g, v, column);
        for (int u = 0; u < n; ++u)
            if (u != v && !column[u]) return false;
    }
    return true;
}

// The penalty Z for unreachable targets: either the exact Z -> infinity
// semantics (reachability compared first) or a concrete numeric value.
template <class S>
struct ZPolicyT {
    enum class Mode { lexicographic, numeric };
    Mode mode = Mode::lexicographic;
    S z{};

    static ZPolicyT lex() { return {Mode::lexicographic, S{}}; }
    static ZPolicyT numeric(S z_value) { return {Mode::numeric, z_value}; }

    // Comfortably above (1+alpha) * n * (max finite stretch) for any instance
    // exercised at desk scale.
    static ZPolicyT default_numeric(const S& alpha, int n) {
        return numeric(scalar_from_int<S>(1000000) * (scalar_from_int<S>(1) + alpha) *
                       scalar_from_int<S>(n));
    }
};

template <class S>
std::optional<S> stretch(const NetworkT<S>& g, int u, int v) {
    auto r = greedy_distance(g, u, v);
    if (!r.reachable) return std::nullopt;
    return r.length / g.metric->dist(u, v);
}

template <class S>
S stretch_or_penalty(const NetworkT<S>& g, int u, int v, const ZPolicyT<S>& z) {
    if (z.mode != ZPolicyT<S>::Mode::numeric) {
        throw std::invalid_argument("stretch_or_penalty needs a numeric Z policy");
    }
    auto s = stretch(g, u, v);
    return s ? *s : z.z;
}

template <class S>
struct CostBreakdownT {
    int unreachable = 0;
    S finite_stretch_sum{};
    int edge_count = 0;
    S alpha{};

    S finite_total() const { return finite_stretch_sum + alpha * scalar_from_int<S>(edge_count); }
    S numeric_total(const S& z) const {
        return finite_total() + z * scalar_from_int<S>(unreachable);
    }

    CostBreakdownT& operator+=(const CostBreakdownT& o) {
        unreachable += o.unreachable;
        finite_stretch_sum += o.finite_stretch_sum;
        edge_count += o.edge_count;
        return *this;
    }
};

// Orders two cost breakdowns under a Z policy. Lexicographic mode realizes
// the Z -> infinity reading: fewer unreachable targets always wins.
template <class S>
int compare_costs(const CostBreakdownT<S>& a, const CostBreakdownT<S>& b, const ZPolicyT<S>& z) {
    if (z.mode == ZPolicyT<S>::Mode::lexicographic) {
        if (a.unreachable != b.unreachable) return a.unreachable < b.unreachable ? -1 : 1;
        S ta = a.finite_total();
        S tb = b.finite_total();
        if (ta < tb) return -1;
        if (tb < ta) return 1;
        return 0;
    }
    S ta = a.numeric_total(z.z);
    S tb = b.numeric_total(z.z);
    if (ta < tb) return -1;
    if (tb < ta) return 1;
    return 0;
}

namespace detail {

template <class S>
CostBreakdownT<S> cost_from_row(const MetricSpaceT<S>& m, int u,
                                const std::vector<std::optional<S>>& gd_row, int edges,
                                const S& alpha) {
    CostBreakdownT<S> cb;
    cb.edge_count = edges;
    cb.alpha = alpha;
    for (int v = 0; v < m.size(); ++v) {
        if (v == u) continue;
        if (gd_row[v]) {
            cb.finite_stretch_sum += *gd_row[v] / m.dist(u, v);
        } else {
            ++cb.unreachable;
        }
    }
    return cb;
}

}  // namespace detail

template <class S>
CostBreakdownT<S> agent_cost(const MetricSpaceT<S>& m, const StrategyProfile& s, int u,
                             const S& alpha) {
    NetworkT<S> g = build_network(m, s);
    const int n = m.size();
    std::vector<std::optional<S>> row(n);
    std::vector<std::optional<S>> column;
    for (int v = 0; v < n; ++v) {
        if (v == u) continue;
        greedy_to_target(g, v, column);
        row[v] = column[u];
    }
    return detail::cost_from_row(m, u, row, static_cast<int>(s.strategies[u].size()), alpha);
}

template <class S>
struct SocialCostT {
    std::vector<CostBreakdownT<S>> per_agent;
    CostBreakdownT<S> total;
};

template <class S>
SocialCostT<S> social_cost(const MetricSpaceT<S>& m, const StrategyProfile& s, const S& alpha) {
    NetworkT<S> g = build_network(m, s);
    const int n = m.size();
    AllPairsGreedy<S> gd = all_pairs_greedy(g);
    SocialCostT<S> out;
    out.total.alpha = alpha;
    for (int u = 0; u < n; ++u) {
        std::vector<std::optional<S>> row(n);
        for (int v = 0; v < n; ++v) row[v] = gd.at(u, v);
        auto cb = detail::cost_from_row(m, u, row, static_cast<int>(s.strategies[u].size()), alpha);
        out.total += cb;
        out.per_agent.push_back(std::move(cb));
    }
    return out;
}

// Caches the all-pairs greedy distances of one profile; any profile change
// goes through set_profile/mutate_agent and drops the cache.
template <class S>
class CostEngine {
public:
    CostEngine(const MetricSpaceT<S>& m, StrategyProfile s) : metric_(&m) {
        set_profile(std::move(s));
    }

    const StrategyProfile& profile() const { return profile_; }

    void set_profile(StrategyProfile s) {
        s.validate(metric_->size());
        profile_ = std::move(s);
        cache_.reset();
    }

    void mutate_agent(int agent, std::vector<int> strategy) {
        profile_.set(agent, std::move(strategy));
        profile_.validate(metric_->size());
        cache_.reset();
    }

    const AllPairsGreedy<S>& distances() {
        if (!cache_) {
            cache_ = all_pairs_greedy(build_network(*metric_, profile_));
        }
        return *cache_;
    }

    CostBreakdownT<S> agent_cost(int u, const S& alpha) {
        const AllPairsGreedy<S>& gd = distances();
        const int n = metric_->size();
        std::vector<std::optional<S>> row(n);
        for (int v = 0; v < n; ++v) row[v] = gd.at(u, v);
        return detail::cost_from_row(*metric_, u, row,
                                     static_cast<int>(profile_.strategies[u].size()), alpha);
    }

    bool routing_enabled() {
        const AllPairsGreedy<S>& gd = distances();
        for (int u = 0; u < gd.n; ++u)
            for (int v = 0; v < gd.n; ++v)
                if (u != v && !gd.at(u, v)) return false;
        return true;
    }

private:
    const MetricSpaceT<S>* metric_;
    StrategyProfile profile_;
    std::optional<AllPairsGreedy<S>> cache_;
};

}  // namespace gnf
