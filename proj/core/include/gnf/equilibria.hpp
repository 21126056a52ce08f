#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gnf/game.hpp"

namespace gnf {

class ExactLimitError : public std::runtime_error {
public:
    explicit ExactLimitError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kDefaultExactLimit = 16;

// Facility matrix for a fixed deviator u. M[w][v] is the length of the best
// greedy path to v whose first hop is w, i.e. d(u,w) plus the greedy distance
// from w to v in the network with u's node removed; infinite unless
// d(w,v) < d(u,v). A greedy path starting at u never revisits u (distances to
// the target strictly decrease), so u's own edges appear only as the first
// hop and the cost of any strategy S decomposes over column minima of M.
template <class S>
struct DeviationMatrixT {
    int u = -1;
    int n = 0;
    std::vector<std::optional<S>> M;  // row-major [w][v], row u unused

    const std::optional<S>& at(int w, int v) const { return M[size_t(w) * n + v]; }

    const MetricSpaceT<S>* metric = nullptr;

    CostBreakdownT<S> cost_of(const std::vector<int>& strategy, const S& alpha) const {
        CostBreakdownT<S> cb;
        cb.alpha = alpha;
        cb.edge_count = static_cast<int>(strategy.size());
        for (int v = 0; v < n; ++v) {
            if (v == u) continue;
            std::optional<S> best;
            for (int w : strategy) {
                const auto& entry = at(w, v);
                if (!entry) continue;
                if (!best || *entry < *best) best = *entry;
            }
            if (best) {
                cb.finite_stretch_sum += *best / metric->dist(u, v);
            } else {
                ++cb.unreachable;
            }
        }
        return cb;
    }
};

template <class S>
DeviationMatrixT<S> deviation_matrix(const MetricSpaceT<S>& m, const StrategyProfile& s, int u) {
    s.validate(m.size());
    const int n = m.size();
    StrategyProfile rest = s;
    rest.strategies[u].clear();
    for (int x = 0; x < n; ++x) rest.remove_edge(x, u);
    NetworkT<S> g_minus = build_network(m, rest);

    DeviationMatrixT<S> dm;
    dm.u = u;
    dm.n = n;
    dm.metric = &m;
    dm.M.assign(size_t(n) * n, std::nullopt);
    std::vector<std::optional<S>> column;
    for (int v = 0; v < n; ++v) {
        if (v == u) continue;
        greedy_to_target(g_minus, v, column);
        const S& duv = m.dist(u, v);
        for (int w = 0; w < n; ++w) {
            if (w == u) continue;
            if (!(m.dist(w, v) < duv)) continue;  // first hop must make strict progress
            if (!column[w]) continue;
            dm.M[size_t(w) * n + v] = m.dist(u, w) + *column[w];
        }
    }
    return dm;
}

namespace detail {

// Candidate better than incumbent: cheaper cost, then fewer edges, then
// lexicographically smaller target set. Keeps every solver deterministic.
template <class S>
bool strategy_better(const CostBreakdownT<S>& ca, const std::vector<int>& sa,
                     const CostBreakdownT<S>& cb, const std::vector<int>& sb,
                     const ZPolicyT<S>& z) {
    int c = compare_costs(ca, cb, z);
    if (c != 0) return c < 0;
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sa < sb;
}

template <class S>
struct BestResponseSearch {
    const DeviationMatrixT<S>& dm;
    S alpha;
    ZPolicyT<S> z;
    std::vector<int> candidates;
    // suffix_best[i][v]: best M entry over candidates[i..] for target v
    std::vector<std::vector<std::optional<S>>> suffix_best;

    bool has_best = false;
    std::vector<int> best_strategy;
    CostBreakdownT<S> best_cost;

    std::vector<int> chosen;
    std::vector<std::optional<S>> chosen_min;  // per target

    explicit BestResponseSearch(const DeviationMatrixT<S>& dm_, const S& alpha_,
                                const ZPolicyT<S>& z_)
        : dm(dm_), alpha(alpha_), z(z_) {}

    void seed(const std::vector<int>& strategy) {
        auto cost = dm.cost_of(strategy, alpha);
        if (!has_best || strategy_better(cost, strategy, best_cost, best_strategy, z)) {
            has_best = true;
            best_strategy = strategy;
            best_cost = cost;
        }
    }

    void select_candidates() {
        const int n = dm.n;
        std::vector<int> all;
        for (int w = 0; w < n; ++w)
            if (w != dm.u) all.push_back(w);
        // Dominated-row pruning: a facility whose whole row is pointwise no
        // better than an earlier one can never be needed (edges cost the
        // same alpha). Only prune against smaller ids so the lexicographic
        // tie-break is unaffected.
        for (int w : all) {
            bool dominated = false;
            for (int w2 : candidates) {
                bool dominates = true;
                for (int v = 0; v < n && dominates; ++v) {
                    if (v == dm.u) continue;
                    const auto& a = dm.at(w2, v);
                    const auto& b = dm.at(w, v);
                    if (!b) continue;           // infinite is always covered
                    if (!a || *b < *a) dominates = false;
                }
                if (dominates) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) candidates.push_back(w);
        }
        const int k = static_cast<int>(candidates.size());
        suffix_best.assign(k + 1, std::vector<std::optional<S>>(n));
        for (int i = k - 1; i >= 0; --i) {
            suffix_best[i] = suffix_best[i + 1];
            for (int v = 0; v < n; ++v) {
                if (v == dm.u) continue;
                const auto& entry = dm.at(candidates[i], v);
                if (!entry) continue;
                auto& slot = suffix_best[i][v];
                if (!slot || *entry < *slot) slot = *entry;
            }
        }
    }

    CostBreakdownT<S> bound(int i) const {
        CostBreakdownT<S> cb;
        cb.alpha = alpha;
        cb.edge_count = static_cast<int>(chosen.size());
        for (int v = 0; v < dm.n; ++v) {
            if (v == dm.u) continue;
            std::optional<S> best = chosen_min[v];
            const auto& rest = suffix_best[i][v];
            if (rest && (!best || *rest < *best)) best = rest;
            if (best) {
                cb.finite_stretch_sum += *best / dm.metric->dist(dm.u, v);
            } else {
                ++cb.unreachable;
            }
        }
        return cb;
    }

    void run() {
        select_candidates();
        chosen_min.assign(dm.n, std::nullopt);
        recurse(0);
    }

    void recurse(int i) {
        CostBreakdownT<S> lb = bound(i);
        int cmp = compare_costs(lb, best_cost, z);
        if (cmp > 0) return;  // even the optimistic completion loses
        if (i == static_cast<int>(candidates.size())) {
            // lb is exact here
            if (strategy_better(lb, chosen, best_cost, best_strategy, z)) {
                best_cost = lb;
                best_strategy = chosen;
            }
            return;
        }
        const int w = candidates[i];
        // include w
        std::vector<std::optional<S>> saved = chosen_min;
        chosen.push_back(w);
        for (int v = 0; v < dm.n; ++v) {
            if (v == dm.u) continue;
            const auto& entry = dm.at(w, v);
            if (!entry) continue;
            auto& slot = chosen_min[v];
            if (!slot || *entry < *slot) slot = *entry;
        }
        recurse(i + 1);
        chosen.pop_back();
        chosen_min = std::move(saved);
        // exclude w
        recurse(i + 1);
    }
};

}  // namespace detail

template <class S>
std::vector<int> best_response_greedy(const MetricSpaceT<S>& m, const StrategyProfile& s, int u,
                                      const S& alpha, const ZPolicyT<S>& z) {
    DeviationMatrixT<S> dm = deviation_matrix(m, s, u);
    std::vector<int> strategy;
    auto cost = dm.cost_of(strategy, alpha);
    for (;;) {
        int pick = -1;
        CostBreakdownT<S> pick_cost;
        for (int w = 0; w < dm.n; ++w) {
            if (w == u) continue;
            if (std::binary_search(strategy.begin(), strategy.end(), w)) continue;
            auto trial = strategy;
            trial.insert(std::lower_bound(trial.begin(), trial.end(), w), w);
            auto c = dm.cost_of(trial, alpha);
            if (compare_costs(c, cost, z) < 0 &&
                (pick < 0 || compare_costs(c, pick_cost, z) < 0)) {
                pick = w;
                pick_cost = c;
            }
        }
        if (pick < 0) break;
        strategy.insert(std::lower_bound(strategy.begin(), strategy.end(), pick), pick);
        cost = pick_cost;
    }
    // Drop edges made redundant by later picks.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < strategy.size(); ++i) {
            auto trial = strategy;
            trial.erase(trial.begin() + i);
            auto c = dm.cost_of(trial, alpha);
            if (compare_costs(c, cost, z) < 0) {
                strategy = trial;
                cost = c;
                changed = true;
                break;
            }
        }
    }
    return strategy;
}

template <class S>
struct BestResponse {
    std::vector<int> strategy;
    CostBreakdownT<S> cost;
};

template <class S>
BestResponse<S> best_response_exact(const MetricSpaceT<S>& m, const StrategyProfile& s, int u,
                                    const S& alpha, const ZPolicyT<S>& z,
                                    int exact_limit = kDefaultExactLimit) {
    if (m.size() > exact_limit) {
        throw ExactLimitError("exact best response limited to n <= " +
                              std::to_string(exact_limit) + " agents");
    }
    DeviationMatrixT<S> dm = deviation_matrix(m, s, u);
    detail::BestResponseSearch<S> search(dm, alpha, z);
    search.seed(s.strategies[u]);
    search.seed(best_response_greedy(m, s, u, alpha, z));
    search.run();
    return {search.best_strategy, search.best_cost};
}

template <class S>
struct EquilibriumReportT {
    bool verdict = true;
    std::optional<int> agent;                      // deviator when verdict is false
    std::optional<Move> move;                      // single-move witness (GE)
    std::optional<std::vector<int>> strategy;      // full-strategy witness (NE)
    CostBreakdownT<S> current;
    CostBreakdownT<S> improved;
};

template <class S>
std::vector<Move> enumerate_moves(const StrategyProfile& s, int u) {
    const auto& cur = s.strategies[u];
    const int n = s.n();
    std::vector<Move> moves;
    for (int t : cur) moves.push_back({Move::Kind::del, t, -1});
    for (int f : cur)
        for (int t = 0; t < n; ++t)
            if (t != u && !s.has_edge(u, t)) moves.push_back({Move::Kind::swap, f, t});
    for (int t = 0; t < n; ++t)
        if (t != u && !s.has_edge(u, t)) moves.push_back({Move::Kind::add, -1, t});
    return moves;
}

// First strictly improving single move of agent u in deterministic order
// (deletes, then swaps, then adds, targets ascending), or nullopt.
template <class S>
std::optional<std::pair<Move, CostBreakdownT<S>>> first_improving_move(
    const DeviationMatrixT<S>& dm, const StrategyProfile& s, const S& alpha,
    const ZPolicyT<S>& z) {
    const int u = dm.u;
    auto current = dm.cost_of(s.strategies[u], alpha);
    for (const Move& mv : enumerate_moves<S>(s, u)) {
        auto cand = apply_move(s.strategies[u], mv);
        auto cost = dm.cost_of(cand, alpha);
        if (compare_costs(cost, current, z) < 0) return std::make_pair(mv, cost);
    }
    return std::nullopt;
}

// Best strictly improving single move (smallest resulting cost; ties go to
// the earliest move in canonical order), or nullopt at a single-move fixpoint.
template <class S>
std::optional<std::pair<Move, CostBreakdownT<S>>> best_improving_move(
    const DeviationMatrixT<S>& dm, const StrategyProfile& s, const S& alpha,
    const ZPolicyT<S>& z) {
    const int u = dm.u;
    auto current = dm.cost_of(s.strategies[u], alpha);
    std::optional<std::pair<Move, CostBreakdownT<S>>> best;
    for (const Move& mv : enumerate_moves<S>(s, u)) {
        auto cand = apply_move(s.strategies[u], mv);
        auto cost = dm.cost_of(cand, alpha);
        if (compare_costs(cost, current, z) >= 0) continue;
        if (!best || compare_costs(cost, best->second, z) < 0) best = std::make_pair(mv, cost);
    }
    return best;
}

template <class S>
EquilibriumReportT<S> is_greedy_equilibrium(const MetricSpaceT<S>& m, const StrategyProfile& s,
                                            const S& alpha, const ZPolicyT<S>& z) {
    EquilibriumReportT<S> report;
    for (int u = 0; u < m.size(); ++u) {
        DeviationMatrixT<S> dm = deviation_matrix(m, s, u);
        auto hit = first_improving_move(dm, s, alpha, z);
        if (hit) {
            report.verdict = false;
            report.agent = u;
            report.move = hit->first;
            report.current = dm.cost_of(s.strategies[u], alpha);
            report.improved = hit->second;
            return report;
        }
    }
    return report;
}

template <class S>
EquilibriumReportT<S> is_nash_equilibrium(const MetricSpaceT<S>& m, const StrategyProfile& s,
                                          const S& alpha, const ZPolicyT<S>& z,
                                          int exact_limit = kDefaultExactLimit) {
    EquilibriumReportT<S> report;
    for (int u = 0; u < m.size(); ++u) {
        auto br = best_response_exact(m, s, u, alpha, z, exact_limit);
        DeviationMatrixT<S> dm = deviation_matrix(m, s, u);
        auto current = dm.cost_of(s.strategies[u], alpha);
        if (compare_costs(br.cost, current, z) < 0) {
            report.verdict = false;
            report.agent = u;
            report.strategy = br.strategy;
            report.current = current;
            report.improved = br.cost;
            return report;
        }
    }
    return report;
}

template <class S>
struct ApproxReportT {
    std::vector<S> beta;              // per-agent cost ratio vs best response
    S beta_max{};
    std::vector<char> unreachable;    // agents whose current cost pays the Z penalty
};

template <class S>
ApproxReportT<S> approx_factor(const MetricSpaceT<S>& m, const StrategyProfile& s, const S& alpha,
                               const ZPolicyT<S>& z, int exact_limit = kDefaultExactLimit) {
    if (z.mode != ZPolicyT<S>::Mode::numeric) {
        throw std::invalid_argument("approx_factor needs a numeric Z policy");
    }
    ApproxReportT<S> report;
    report.beta_max = scalar_from_int<S>(0);
    for (int u = 0; u < m.size(); ++u) {
        auto br = best_response_exact(m, s, u, alpha, z, exact_limit);
        DeviationMatrixT<S> dm = deviation_matrix(m, s, u);
        auto current = dm.cost_of(s.strategies[u], alpha);
        S best_total = br.cost.numeric_total(z.z);
        // a lone agent has zero cost either way; its ratio is 1 by convention
        S b = (best_total == scalar_from_int<S>(0)) ? scalar_from_int<S>(1)
                                                    : current.numeric_total(z.z) / best_total;
        report.beta.push_back(b);
        report.unreachable.push_back(current.unreachable > 0);
        if (b > report.beta_max) report.beta_max = b;
    }
    return report;
}

inline StrategyProfile complete_graph_profile(int n) {
    if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
    StrategyProfile s(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (v != u) s.strategies[u].push_back(v);
    return s;
}

template <class S>
struct SocialOptimum {
    StrategyProfile profile;
    CostBreakdownT<S> cost;
};

// Exhaustive minimum over all 2^(n(n-1)) profiles; desk scale only.
template <class S>
SocialOptimum<S> social_optimum_exact(const MetricSpaceT<S>& m, const S& alpha,
                                      const ZPolicyT<S>& z, int limit = 4) {
    const int n = m.size();
    if (n > limit) {
        throw ExactLimitError("exact social optimum limited to n <= " + std::to_string(limit));
    }
    const int per_agent = 1 << (n - 1);
    std::vector<int> mask(n, 0);
    auto decode = [&](int u, int bits) {
        std::vector<int> targets;
        for (int j = 0; j < n - 1; ++j)
            if (bits & (1 << j)) targets.push_back(j < u ? j : j + 1);
        return targets;
    };
    SocialOptimum<S> best;
    bool have = false;
    for (;;) {
        StrategyProfile s(n);
        for (int u = 0; u < n; ++u) s.strategies[u] = decode(u, mask[u]);
        auto sc = social_cost(m, s, alpha);
        if (!have || compare_costs(sc.total, best.cost, z) < 0) {
            best.profile = s;
            best.cost = sc.total;
            have = true;
        }
        int i = 0;
        while (i < n && ++mask[i] == per_agent) mask[i++] = 0;
        if (i == n) break;
    }
    return best;
}

}  // namespace gnf
