#include "gnf/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace gnf {

namespace {

std::vector<std::vector<int>> tree_adjacency(const WeightedTree& t) {
    std::vector<std::vector<int>> adj(t.n);
    for (const auto& e : t.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

}  // namespace

StrategyProfile canonical_gt(const WeightedTree& t) {
    metric_from_tree(t);  // validates shape
    StrategyProfile s(t.n);
    for (const auto& e : t.edges) {
        s.add_edge(e.u, e.v);
        s.add_edge(e.v, e.u);
    }
    return s;
}

RootedView below_subtrees(const WeightedTree& t, int root) {
    if (root < 0 || root >= t.n) throw std::invalid_argument("root out of range");
    metric_from_tree(t);  // validates shape
    auto adj = tree_adjacency(t);
    RootedView view;
    view.root = root;
    view.parent.assign(t.n, -1);
    view.children.assign(t.n, {});
    view.subtree.assign(t.n, {});
    view.depth.assign(t.n, 0);

    std::vector<int> bfs{root};
    std::vector<char> seen(t.n, 0);
    seen[root] = 1;
    for (size_t i = 0; i < bfs.size(); ++i) {
        int x = bfs[i];
        for (int y : adj[x]) {
            if (seen[y]) continue;
            seen[y] = 1;
            view.parent[y] = x;
            view.depth[y] = view.depth[x] + 1;
            view.children[x].push_back(y);
            bfs.push_back(y);
        }
    }
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
        int x = *it;
        view.subtree[x].push_back(x);
        for (int c : view.children[x]) {
            view.subtree[x].insert(view.subtree[x].end(), view.subtree[c].begin(),
                                   view.subtree[c].end());
        }
        std::sort(view.subtree[x].begin(), view.subtree[x].end());
    }
    view.bottom_up.resize(t.n);
    for (int i = 0; i < t.n; ++i) view.bottom_up[i] = i;
    std::sort(view.bottom_up.begin(), view.bottom_up.end(), [&](int a, int b) {
        if (view.depth[a] != view.depth[b]) return view.depth[a] > view.depth[b];
        return a < b;
    });
    return view;
}

bool verify_unique_ge(const WeightedTree& t, const StrategyProfile& s, const Rat& /*alpha*/) {
    return s == canonical_gt(t);
}

ActivationSchedule weak_acyclicity_schedule(const WeightedTree& t, const StrategyProfile& s0) {
    s0.validate(t.n);
    RootedView view = below_subtrees(t, 0);
    std::vector<int> order = view.bottom_up;
    std::vector<int> top_down(view.bottom_up.rbegin(), view.bottom_up.rend());
    order.insert(order.end(), top_down.begin(), top_down.end());
    return ActivationSchedule::explicit_order(std::move(order));
}

TreeSetCoverGadget tree_setcover_gadget(const SetCoverProblem& p) {
    if (p.n_elements < 1 || p.sets.empty()) {
        throw std::invalid_argument("set cover instance needs elements and sets");
    }
    for (const auto& set : p.sets)
        for (int e : set)
            if (e < 0 || e >= p.n_elements) throw std::invalid_argument("set element out of range");

    const int m = static_cast<int>(p.sets.size());
    const int n = 3 + m + p.n_elements;  // u, v, c, sets, elements

    TreeSetCoverGadget out;
    out.deviator = 0;
    out.v_node = 1;
    out.c_node = 2;
    for (int j = 0; j < m; ++j) out.set_nodes.push_back(3 + j);
    for (int i = 0; i < p.n_elements; ++i) out.element_nodes.push_back(3 + m + i);
    out.alpha = Rat(41, 10);

    PartialDistanceSpecT<Rat> spec;
    spec.n = n;
    auto at = [&](int a, int b, Rat d) { spec.entries.push_back({a, b, std::move(d)}); };
    at(0, 1, Rat(3));       // u - v
    at(0, 2, Rat(4));       // u - c
    at(1, 2, Rat(1));       // v - c, the tree reading of d(u,c) = d(u,v) + w(v,c)
    for (int j = 0; j < m; ++j) {
        at(0, out.set_nodes[j], Rat(3));
        at(1, out.set_nodes[j], Rat(2));
    }
    for (int i = 0; i < p.n_elements; ++i) at(0, out.element_nodes[i], Rat(4));
    for (int j = 0; j < m; ++j)
        for (int e : p.sets[j]) at(out.set_nodes[j], out.element_nodes[e], Rat(3));
    out.metric = metric_closure(spec);

    out.background = StrategyProfile(n);
    std::vector<int> v_row{out.c_node};
    v_row.insert(v_row.end(), out.set_nodes.begin(), out.set_nodes.end());
    out.background.set(out.v_node, std::move(v_row));
    for (int j = 0; j < m; ++j) {
        std::vector<int> row;
        for (int e : p.sets[j]) row.push_back(out.element_nodes[e]);
        out.background.set(out.set_nodes[j], std::move(row));
    }
    return out;
}

}  // namespace gnf
