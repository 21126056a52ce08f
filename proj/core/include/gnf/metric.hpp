#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnf/scalar.hpp"

namespace gnf {

enum class MetricKind { one_two, tree, euclidean2d, general };

inline const char* metric_kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::one_two: return "one_two";
        case MetricKind::tree: return "tree";
        case MetricKind::euclidean2d: return "euclidean";
        case MetricKind::general: return "general";
    }
    return "?";
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double euclid_dist(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

template <class S>
struct WeightedTreeT {
    struct Edge {
        int u;
        int v;
        S w;
    };
    int n = 0;
    std::vector<Edge> edges;
};

using WeightedTree = WeightedTreeT<Rat>;

template <class S>
struct PartialDistanceSpecT {
    struct Entry {
        int u;
        int v;
        S d;
    };
    int n = 0;
    std::vector<Entry> entries;
};

// Complete symmetric distance matrix over n agents, immutable once built.
template <class S>
class MetricSpaceT {
public:
    MetricSpaceT() = default;
    MetricSpaceT(int n, MetricKind kind) : n_(n), kind_(kind), d_(size_t(n) * n, S{}) {}

    int size() const { return n_; }
    MetricKind kind() const { return kind_; }

    const S& dist(int u, int v) const { return d_[size_t(u) * n_ + v]; }
    void set_dist(int u, int v, const S& value) {
        d_[size_t(u) * n_ + v] = value;
        d_[size_t(v) * n_ + u] = value;
    }

    // Provenance, kept for validation and serialization.
    std::vector<Vec2> points;                       // euclidean2d
    std::optional<WeightedTreeT<S>> tree;           // tree

private:
    int n_ = 0;
    MetricKind kind_ = MetricKind::general;
    std::vector<S> d_;
};

using RatMetric = MetricSpaceT<Rat>;
using EuclidMetric = MetricSpaceT<double>;

struct MetricViolation {
    enum class Kind { structural, diagonal, symmetry, positivity, triangle, kind_specific };
    Kind kind;
    int u = -1;
    int v = -1;
    int w = -1;  // triangle: d(u,w) > d(u,v) + d(v,w)
    std::string detail;
};

struct MetricValidation {
    bool ok = true;
    std::vector<MetricViolation> violations;
};

inline RatMetric metric_from_one_two(int n, const std::vector<std::pair<int, int>>& one_edges) {
    if (n < 1) throw std::invalid_argument("one_two metric needs n >= 1");
    RatMetric m(n, MetricKind::one_two);
    const Rat two(2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) m.set_dist(u, v, two);
    for (auto [u, v] : one_edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
            throw std::invalid_argument("one_two edge out of range");
        }
        m.set_dist(u, v, Rat(1));
    }
    return m;
}

template <class S>
MetricSpaceT<S> metric_from_tree(const WeightedTreeT<S>& t) {
    const int n = t.n;
    if (n < 1) throw std::invalid_argument("tree metric needs n >= 1");
    if (static_cast<int>(t.edges.size()) != n - 1) {
        throw std::invalid_argument("tree must have exactly n-1 edges");
    }
    std::vector<std::vector<std::pair<int, S>>> adj(n);
    for (const auto& e : t.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
            throw std::invalid_argument("tree edge out of range");
        }
        if (!(e.w > scalar_from_int<S>(0))) {
            throw std::invalid_argument("tree edge weight must be positive");
        }
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    MetricSpaceT<S> m(n, MetricKind::tree);
    std::vector<char> seen(n);
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, root);
        seen[root] = 1;
        int visited = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++visited;
            for (auto& [y, w] : adj[x]) {
                if (seen[y]) continue;
                seen[y] = 1;
                m.set_dist(root, y, m.dist(root, x) + w);
                stack.push_back(y);
            }
        }
        if (visited != n) throw std::invalid_argument("tree edge list is disconnected or cyclic");
    }
    m.tree = t;
    return m;
}

inline EuclidMetric metric_from_points(const std::vector<Vec2>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 1) throw std::invalid_argument("euclidean metric needs at least one point");
    EuclidMetric m(n, MetricKind::euclidean2d);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double d = euclid_dist(points[u], points[v]);
            if (d == 0.0) throw std::invalid_argument("coincident points are rejected");
            m.set_dist(u, v, d);
        }
    }
    m.points = points;
    return m;
}

template <class S>
MetricValidation validate_metric(const MetricSpaceT<S>& m) {
    MetricValidation report;
    auto flag = [&](MetricViolation v) {
        report.ok = false;
        report.violations.push_back(std::move(v));
    };
    const int n = m.size();
    const S zero = scalar_from_int<S>(0);
    for (int u = 0; u < n; ++u) {
        if (!(m.dist(u, u) == zero)) {
            flag({MetricViolation::Kind::diagonal, u, u, -1, "nonzero diagonal"});
        }
        for (int v = 0; v < n; ++v) {
            if (m.dist(u, v) < zero) {
                flag({MetricViolation::Kind::structural, u, v, -1, "negative distance"});
            }
            if (!(m.dist(u, v) == m.dist(v, u))) {
                flag({MetricViolation::Kind::symmetry, u, v, -1, "asymmetric entry"});
            }
            if (u != v && m.dist(u, v) == zero) {
                flag({MetricViolation::Kind::positivity, u, v, -1, "zero distance between distinct agents"});
            }
        }
    }
    if (!report.ok) return report;  // triangle checks on broken structure are noise

    for (int u = 0; u < n; ++u) {
        for (int w = 0; w < n; ++w) {
            if (u == w) continue;
            for (int v = 0; v < n; ++v) {
                if (v == u || v == w) continue;
                if (m.dist(u, w) > m.dist(u, v) + m.dist(v, w)) {
                    flag({MetricViolation::Kind::triangle, u, v, w,
                          "d(u,w) > d(u,v) + d(v,w)"});
                }
            }
        }
    }

    if (m.kind() == MetricKind::one_two) {
        const S one = scalar_from_int<S>(1);
        const S two = scalar_from_int<S>(2);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!(m.dist(u, v) == one) && !(m.dist(u, v) == two)) {
                    flag({MetricViolation::Kind::kind_specific, u, v, -1,
                          "one_two entry not in {1,2}"});
                }
    }
    if (m.kind() == MetricKind::euclidean2d && !m.points.empty()) {
        if (static_cast<int>(m.points.size()) != n) {
            flag({MetricViolation::Kind::kind_specific, -1, -1, -1, "point count mismatch"});
        } else {
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    double stored = scalar_traits<S>::to_double(m.dist(u, v));
                    double geo = euclid_dist(m.points[u], m.points[v]);
                    if (std::abs(stored - geo) > 1e-12 * std::max(1.0, geo)) {
                        flag({MetricViolation::Kind::kind_specific, u, v, -1,
                              "entry disagrees with point coordinates"});
                    }
                }
        }
    }
    if (m.kind() == MetricKind::tree && m.tree) {
        MetricSpaceT<S> rebuilt = metric_from_tree(*m.tree);
        if (rebuilt.size() != n) {
            flag({MetricViolation::Kind::kind_specific, -1, -1, -1, "tree size mismatch"});
        } else {
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (!(rebuilt.dist(u, v) == m.dist(u, v))) {
                        flag({MetricViolation::Kind::kind_specific, u, v, -1,
                              "entry disagrees with tree path length"});
                    }
        }
    }
    return report;
}

// Shortest-path completion of a sparse symmetric specification. A specified
// entry that the closure undercuts is a triangle violation of the spec itself
// and is reported; it is never silently shortened.
template <class S>
MetricSpaceT<S> metric_closure(const PartialDistanceSpecT<S>& spec,
                               MetricValidation* report = nullptr) {
    const int n = spec.n;
    if (n < 1) throw std::invalid_argument("closure needs n >= 1");
    const S zero = scalar_from_int<S>(0);
    std::vector<std::optional<S>> d(size_t(n) * n);
    for (int u = 0; u < n; ++u) d[size_t(u) * n + u] = zero;
    for (const auto& e : spec.entries) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
            throw std::invalid_argument("distance spec entry out of range");
        }
        if (!(e.d > zero)) throw std::invalid_argument("specified distance must be positive");
        auto& slot = d[size_t(e.u) * n + e.v];
        if (slot && !(*slot == e.d)) {
            throw std::invalid_argument("conflicting specified distances");
        }
        slot = e.d;
        d[size_t(e.v) * n + e.u] = e.d;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            const auto& dik = d[size_t(i) * n + k];
            if (!dik) continue;
            for (int j = 0; j < n; ++j) {
                const auto& dkj = d[size_t(k) * n + j];
                if (!dkj) continue;
                S via = *dik + *dkj;
                auto& dij = d[size_t(i) * n + j];
                if (!dij || via < *dij) dij = via;
            }
        }
    }
    MetricSpaceT<S> m(n, MetricKind::general);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (!d[size_t(u) * n + v]) {
                throw std::invalid_argument("distance spec graph is disconnected (agent " +
                                            std::to_string(v) + " unreachable)");
            }
            m.set_dist(u, v, *d[size_t(u) * n + v]);
        }
    }
    // Closure can only undercut a specified entry if the spec violated the
    // triangle inequality somewhere; surface which entry.
    for (const auto& e : spec.entries) {
        if (m.dist(e.u, e.v) < e.d) {
            MetricViolation v{MetricViolation::Kind::triangle, e.u, -1, e.v,
                              "specified entry exceeds shortest specified path"};
            if (report) {
                report->ok = false;
                report->violations.push_back(v);
            } else {
                throw std::invalid_argument("specified distance (" + std::to_string(e.u) + "," +
                                            std::to_string(e.v) +
                                            ") violates the triangle inequality against the closure");
            }
        }
    }
    return m;
}

}  // namespace gnf
