#include "gnf/one_two.hpp"

#include <algorithm>
#include <stdexcept>

#include "gnf/setcover.hpp"

namespace gnf {

namespace {

const Rat kOne(1);
const Rat kTwo(2);
const Rat kHalf(1, 2);

void require_one_two(const RatMetric& m) {
    if (m.kind() != MetricKind::one_two) {
        throw std::invalid_argument("operation requires a 1-2 metric");
    }
}

bool is_one(const RatMetric& m, int u, int v) { return m.dist(u, v) == kOne; }

std::vector<int> metric_v1(const RatMetric& m, int u) {
    std::vector<int> out;
    for (int v = 0; v < m.size(); ++v)
        if (v != u && is_one(m, u, v)) out.push_back(v);
    return out;
}

std::vector<int> metric_v2(const RatMetric& m, int u) {
    std::vector<int> out;
    for (int v = 0; v < m.size(); ++v)
        if (v != u && !is_one(m, u, v)) out.push_back(v);
    return out;
}

// Nodes reachable from u by two metric 1-edges; equals W1->1 whenever all
// 1-edges are built.
std::vector<char> metric_two_step(const RatMetric& m, int u) {
    std::vector<char> reach(m.size(), 0);
    for (int x = 0; x < m.size(); ++x) {
        if (x == u || !is_one(m, u, x)) continue;
        for (int w = 0; w < m.size(); ++w)
            if (w != u && w != x && is_one(m, x, w)) reach[w] = 1;
    }
    return reach;
}

// Does target set S of agent u dominate G^1_{-u}?
bool dominates(const RatMetric& m, int u, const std::vector<char>& in_set) {
    for (int x = 0; x < m.size(); ++x) {
        if (x == u || in_set[x]) continue;
        bool covered = false;
        for (int y = 0; y < m.size() && !covered; ++y)
            if (y != u && in_set[y] && is_one(m, y, x)) covered = true;
        if (!covered) return false;
    }
    return true;
}

std::vector<char> to_flags(int n, const std::vector<int>& ids) {
    std::vector<char> f(n, 0);
    for (int v : ids) f[v] = 1;
    return f;
}

// Covering instance for agent u: choose 2-edge targets so that together with
// the forced 1-edges the out-neighborhood dominates G^1_{-u}.
struct AgentCover {
    std::vector<int> universe;     // distance-2 nodes not yet covered via V1
    CoverInstance inst;            // candidate ids are agent ids
    std::vector<int> v1;
    std::vector<char> v2plus;      // metric two-step reachability flags
};

AgentCover agent_cover_instance(const RatMetric& m, int u, const Rat& w_plus,
                                const Rat& w_minus) {
    AgentCover out;
    out.v1 = metric_v1(m, u);
    out.v2plus = metric_two_step(m, u);
    std::vector<int> v2 = metric_v2(m, u);
    std::vector<char> covered(m.size(), 0);
    for (int y : out.v1)
        for (int x : v2)
            if (is_one(m, y, x)) covered[x] = 1;
    std::vector<int> index_of(m.size(), -1);
    for (int x : v2) {
        if (covered[x]) continue;
        index_of[x] = static_cast<int>(out.universe.size());
        out.universe.push_back(x);
    }
    out.inst.n_elements = static_cast<int>(out.universe.size());
    for (int w : v2) {
        CoverInstance::Candidate cand;
        cand.id = w;
        cand.weight = out.v2plus[w] ? w_plus : w_minus;
        if (index_of[w] >= 0) cand.covers.push_back(index_of[w]);
        for (int x : v2)
            if (x != w && index_of[x] >= 0 && is_one(m, w, x)) cand.covers.push_back(index_of[x]);
        out.inst.candidates.push_back(std::move(cand));
    }
    return out;
}

std::vector<int> merge_row(std::vector<int> v1, const std::vector<int>& extra) {
    v1.insert(v1.end(), extra.begin(), extra.end());
    std::sort(v1.begin(), v1.end());
    return v1;
}

}  // namespace

NeighborhoodSets neighborhood_sets(const RatMetric& m, const StrategyProfile& s, int u) {
    require_one_two(m);
    s.validate(m.size());
    NeighborhoodSets sets;
    for (int v : s.strategies[u]) {
        (is_one(m, u, v) ? sets.w1 : sets.w2).push_back(v);
    }
    std::vector<char> two_step(m.size(), 0);
    for (int x : s.strategies[u]) {
        if (!is_one(m, u, x)) continue;
        for (int w : s.strategies[x])
            if (w != u && is_one(m, x, w)) two_step[w] = 1;
    }
    for (int w = 0; w < m.size(); ++w)
        if (two_step[w]) sets.w1to1.push_back(w);
    for (int w : sets.w2) (two_step[w] ? sets.w2plus : sets.w2minus).push_back(w);
    return sets;
}

DsgVerdict is_dsg(const RatMetric& m, const StrategyProfile& s) {
    require_one_two(m);
    s.validate(m.size());
    const int n = m.size();
    DsgVerdict verdict;
    for (int u = 0; u < n && verdict.all_one_edges; ++u) {
        for (int v = 0; v < n; ++v) {
            if (v == u || !is_one(m, u, v)) continue;
            if (!s.has_edge(u, v)) {
                verdict.all_one_edges = false;
                verdict.missing_one_edge = {u, v};
                break;
            }
        }
    }
    for (int u = 0; u < n && verdict.dominating; ++u) {
        auto flags = to_flags(n, s.strategies[u]);
        for (int x = 0; x < n; ++x) {
            if (x == u || flags[x]) continue;
            bool covered = false;
            for (int y = 0; y < n && !covered; ++y)
                if (y != u && flags[y] && is_one(m, y, x)) covered = true;
            if (!covered) {
                verdict.dominating = false;
                verdict.undominated = {u, x};
                break;
            }
        }
    }
    if (!verdict.all_one_edges || !verdict.dominating) {
        // (iii) is only meaningful on top of (i)+(ii)
        return verdict;
    }
    for (int u = 0; u < n && verdict.w2plus_irreducible; ++u) {
        NeighborhoodSets sets = neighborhood_sets(m, s, u);
        auto flags = to_flags(n, s.strategies[u]);
        std::vector<char> w1to1 = to_flags(n, sets.w1to1);
        for (int v : sets.w2plus) {
            flags[v] = 0;
            if (dominates(m, u, flags)) {
                verdict.w2plus_irreducible = false;
                verdict.reducible = {u, v, -1};
                flags[v] = 1;
                break;
            }
            // swap to a distance-2 node outside W2 and W1->1
            bool found = false;
            for (int w = 0; w < n && !found; ++w) {
                if (w == u || flags[w] || w1to1[w] || is_one(m, u, w)) continue;
                flags[w] = 1;
                if (dominates(m, u, flags)) {
                    verdict.w2plus_irreducible = false;
                    verdict.reducible = {u, v, w};
                    found = true;
                }
                flags[w] = 0;
            }
            flags[v] = 1;
            if (found) break;
        }
    }
    return verdict;
}

StrategyProfile max_dsg(const RatMetric& m) {
    require_one_two(m);
    const int n = m.size();
    StrategyProfile s(n);
    for (int u = 0; u < n; ++u) {
        std::vector<char> two_step = metric_two_step(m, u);
        std::vector<int> row = metric_v1(m, u);
        for (int w : metric_v2(m, u))
            if (!two_step[w]) row.push_back(w);
        std::sort(row.begin(), row.end());
        s.strategies[u] = std::move(row);
    }
    return s;
}

StrategyProfile min_dsg(const RatMetric& m, SolveMode mode, int exact_limit) {
    require_one_two(m);
    if (mode == SolveMode::exact && m.size() > exact_limit) {
        throw ExactLimitError("exact MinDSG limited to n <= " + std::to_string(exact_limit));
    }
    const int n = m.size();
    StrategyProfile s(n);
    // Lexicographic (count, |W2+ picks|) via scaled integer weights keeps the
    // result inside the DSG class: a count-minimal pick with a W2+ edge
    // swappable to W2- would not be secondary-minimal.
    const Rat unit(n + 2);
    for (int u = 0; u < n; ++u) {
        AgentCover ac = agent_cover_instance(m, u, unit + kOne, unit);
        auto chosen = (mode == SolveMode::exact) ? exact_weighted_cover(ac.inst)
                                                 : greedy_weighted_cover(ac.inst);
        if (!chosen) throw std::logic_error("1-2 domination is always feasible");
        s.strategies[u] = merge_row(ac.v1, *chosen);
    }
    return s;
}

StrategyProfile bdsg(const RatMetric& m, const Rat& alpha, SolveMode mode, int exact_limit) {
    require_one_two(m);
    if (alpha < kHalf) return max_dsg(m);
    if (mode == SolveMode::exact && m.size() > exact_limit) {
        throw ExactLimitError("exact BDSG limited to n <= " + std::to_string(exact_limit));
    }
    const int n = m.size();
    StrategyProfile s(n);
    for (int u = 0; u < n; ++u) {
        AgentCover ac = agent_cover_instance(m, u, alpha, alpha - kHalf);
        auto chosen = (mode == SolveMode::exact) ? exact_weighted_cover(ac.inst)
                                                 : greedy_weighted_cover(ac.inst);
        if (!chosen) throw std::logic_error("1-2 domination is always feasible");
        s.strategies[u] = merge_row(ac.v1, *chosen);
    }
    return s;
}

StrategyProfile log_approx_ne(const RatMetric& m, const Rat& alpha) {
    require_one_two(m);
    if (!(alpha > kHalf)) {
        throw std::invalid_argument("log_approx_ne needs alpha > 1/2; use max_dsg below");
    }
    const int n = m.size();
    StrategyProfile s = max_dsg(m);
    for (int u = 0; u < n; ++u) {
        AgentCover ac = agent_cover_instance(m, u, alpha, alpha - kHalf);
        auto chosen = greedy_weighted_cover(ac.inst);
        if (!chosen) throw std::logic_error("1-2 domination is always feasible");
        std::vector<int> picks = *chosen;
        auto flags = to_flags(n, merge_row(ac.v1, picks));
        // Repair to a proper DSG: drop redundant picks, then swap W2+ picks
        // for W2- targets while domination survives. Both passes only lower
        // the weighted cost.
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < picks.size(); ++i) {
                flags[picks[i]] = 0;
                if (dominates(m, u, flags)) {
                    picks.erase(picks.begin() + i);
                    changed = true;
                    break;
                }
                flags[picks[i]] = 1;
            }
            if (changed) continue;
            for (size_t i = 0; i < picks.size() && !changed; ++i) {
                int v = picks[i];
                if (!ac.v2plus[v]) continue;
                flags[v] = 0;
                for (int w = 0; w < n && !changed; ++w) {
                    if (w == u || flags[w] || ac.v2plus[w] || is_one(m, u, w)) continue;
                    flags[w] = 1;
                    if (dominates(m, u, flags)) {
                        picks[i] = w;
                        std::sort(picks.begin(), picks.end());
                        changed = true;
                        break;
                    }
                    flags[w] = 0;
                }
                if (!changed) flags[v] = 1;
            }
        }
        s.strategies[u] = merge_row(ac.v1, picks);
    }
    return s;
}

std::vector<int> one_two_best_response(const RatMetric& m, const StrategyProfile& s, int u,
                                       const Rat& alpha) {
    require_one_two(m);
    s.validate(m.size());
    if (alpha > kHalf) {
        throw std::invalid_argument(
            "polynomial best response only holds for alpha <= 1/2 (NP-hard above)");
    }
    StrategyProfile md = max_dsg(m);
    return md.strategies[u];
}

DominatingSetGadget dominating_set_gadget(const SimpleGraph& g) {
    if (g.n < 1) throw std::invalid_argument("gadget needs a nonempty graph");
    for (auto [a, b] : g.edges)
        if (a < 0 || b < 0 || a >= g.n || b >= g.n || a == b) {
            throw std::invalid_argument("gadget graph edge out of range");
        }
    DominatingSetGadget out;
    out.metric = metric_from_one_two(g.n + 1, g.edges);
    out.deviator = g.n;
    out.alpha = kOne;
    out.profile = StrategyProfile(g.n + 1);
    for (auto [a, b] : g.edges) {
        out.profile.add_edge(a, b);
        out.profile.add_edge(b, a);
    }
    return out;
}

}  // namespace gnf
