#include "gnf/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gnf/game.hpp"

namespace gnf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

Vec2 polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

}  // namespace

int cone_index(const ConeSystem& cones, const Vec2& apex, const Vec2& p) {
    double dx = p.x - apex.x;
    double dy = p.y - apex.y;
    if (dx == 0.0 && dy == 0.0) throw std::invalid_argument("cone of a coincident point");
    double t = std::atan2(dy, dx) - cones.rotation;
    t = std::fmod(t, kTau);
    if (t < 0) t += kTau;
    int idx = static_cast<int>(t / (kTau / cones.k));
    return idx >= cones.k ? 0 : idx;  // guard the t == 2*pi rounding edge
}

double cone_bisector(const ConeSystem& cones, int index) {
    return cones.rotation + (index + 0.5) * (kTau / cones.k);
}

StrategyProfile theta_graph(const std::vector<Vec2>& points, const ConeSystem& cones) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw std::invalid_argument("theta graph needs at least two points");
    if (cones.k < 2) throw std::invalid_argument("theta graph needs k >= 2");
    StrategyProfile s(n);
    std::vector<double> bis_cos(cones.k), bis_sin(cones.k);
    for (int c = 0; c < cones.k; ++c) {
        double b = cone_bisector(cones, c);
        bis_cos[c] = std::cos(b);
        bis_sin[c] = std::sin(b);
    }
    std::vector<int> best(cones.k);
    std::vector<double> best_proj(cones.k);
    for (int u = 0; u < n; ++u) {
        std::fill(best.begin(), best.end(), -1);
        for (int v = 0; v < n; ++v) {
            if (v == u) continue;
            double dx = points[v].x - points[u].x;
            double dy = points[v].y - points[u].y;
            if (dx == 0.0 && dy == 0.0) throw std::invalid_argument("coincident points");
            int c = cone_index(cones, points[u], points[v]);
            double proj = dx * bis_cos[c] + dy * bis_sin[c];
            if (best[c] < 0 || proj < best_proj[c] || (proj == best_proj[c] && v < best[c])) {
                best[c] = v;
                best_proj[c] = proj;
            }
        }
        std::vector<int> row;
        for (int c = 0; c < cones.k; ++c)
            if (best[c] >= 0) row.push_back(best[c]);
        s.set(u, std::move(row));
    }
    return s;
}

ThetaRoute theta_route(const std::vector<Vec2>& points, const ConeSystem& cones,
                       const StrategyProfile& theta, int u, int v, int step_limit) {
    if (u == v) throw std::invalid_argument("route needs distinct endpoints");
    ThetaRoute route;
    route.greedy = true;
    route.path.push_back(u);
    int x = u;
    for (int step = 0; step < step_limit && x != v; ++step) {
        int want = cone_index(cones, points[x], points[v]);
        int next = -1;
        for (int t : theta.strategies[x]) {
            if (cone_index(cones, points[x], points[t]) == want) {
                next = t;
                break;
            }
        }
        if (next < 0) {
            route.greedy = false;  // dead end; cannot continue
            return route;
        }
        route.length += euclid_dist(points[x], points[next]);
        if (!(euclid_dist(points[next], points[v]) < euclid_dist(points[x], points[v]))) {
            route.greedy = false;
        }
        route.path.push_back(next);
        x = next;
    }
    route.reached = (x == v);
    return route;
}

double stretch_bound_f(int k) {
    if (k <= 6) {
        throw std::domain_error("stretch bound 1/(1-2sin(pi/k)) diverges for k <= 6");
    }
    return 1.0 / (1.0 - 2.0 * std::sin(kPi / k));
}

ApproxSelection select_approx_construction(const std::vector<Vec2>& points, double alpha) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw std::invalid_argument("need at least two points");
    ApproxSelection sel;
    sel.threshold = (12.0 * std::sqrt(3.0) - std::sqrt(2.0) - 1.0) * (n - 1);
    sel.cones.k = (alpha >= sel.threshold) ? 6 : 8;
    sel.cones.rotation = 0.0;
    sel.profile = theta_graph(points, sel.cones);
    sel.claimed_factor = (4.0 + 4.0 * std::sqrt(2.0) - 60.0 * std::sqrt(3.0)) /
                         (std::sqrt(2.0) - 12.0 * std::sqrt(3.0));
    return sel;
}

SmallKCounterexample small_k_counterexample(int k, double epsilon) {
    if (k < 2 || k > 5) {
        throw std::invalid_argument("counterexample family covers 2 <= k <= 5");
    }
    if (!(epsilon > 0.0) || epsilon >= 1.0 / 3.0) {
        throw std::invalid_argument("epsilon must lie in (0, 1/3)");
    }
    // One copy of the u/v/w triple fails whenever v and w share a cone; the
    // rotated copies make some copy fail for every global cone rotation.
    const double wedge = kPi / k - 7.0 * kPi / 36.0;  // rotation tolerance per copy
    const double q = (kTau / k) / wedge;
    int copies = (std::abs(q - std::round(q)) < 1e-9) ? static_cast<int>(std::lround(q))
                                                      : static_cast<int>(std::ceil(q));
    SmallKCounterexample out;
    out.k = k;
    out.epsilon = epsilon;
    out.copies = copies;
    const double spacing = 5.0;  // centers at pairwise distance >= 4
    for (int i = 0; i < copies; ++i) {
        Vec2 center{spacing * i, 0.0};
        double delta = wedge * i;
        int base = static_cast<int>(out.points.size());
        out.points.push_back(center);                                          // u_i
        Vec2 vp = polar(1.0, -7.0 * kPi / 36.0 + delta);
        Vec2 wp = polar(1.0 + epsilon, 7.0 * kPi / 36.0 + delta);
        out.points.push_back({center.x + vp.x, center.y + vp.y});              // v_i
        out.points.push_back({center.x + wp.x, center.y + wp.y});              // w_i
        out.pairs.push_back({base, base + 2});
    }
    return out;
}

ThetaLowerBound lower_bound_instance(int k, double alpha_epsilon) {
    if (k < 6) throw std::invalid_argument("lower bound instance needs k >= 6");
    if (!(alpha_epsilon > 0.0) || alpha_epsilon >= 1.0) {
        throw std::invalid_argument("alpha_epsilon must lie in (0, 1)");
    }
    const int big = (k + 1) / 2 + 1;  // ceil(k/2) + 1 occupied cones
    ThetaLowerBound out;
    out.epsilon = alpha_epsilon;
    // Reference direction on a cone bisector when the occupied-cone count is
    // odd, on a cone edge otherwise.
    out.cones.k = k;
    out.cones.rotation = (big % 2 == 1) ? -kPi / k : 0.0;

    out.points.push_back({0.0, 0.0});  // u
    out.points.push_back({1.0, 0.0});  // v
    out.u = 0;
    out.alt = {1};
    const double limit = kPi / 2.0 - kTau / (5.0 * k);
    for (int j = 0; j < big; ++j) {
        double angle = -limit + j * (2.0 * limit / (big - 1));
        if (std::abs(angle) < 1e-12) continue;  // that spot is v itself
        // distance 1/cos(angle) at angle `angle` is the point (1, tan(angle))
        out.points.push_back({1.0, std::tan(angle)});
    }

    EuclidMetric metric = metric_from_points(out.points);
    StrategyProfile theta = theta_graph(out.points, out.cones);
    out.theta_edges_of_u = static_cast<int>(theta.strategies[0].size());

    auto stretchcost = [&](const StrategyProfile& profile) {
        CostBreakdownT<double> cb = agent_cost<double>(metric, profile, 0, 0.0);
        if (cb.unreachable > 0) {
            throw std::logic_error("lower bound instance lost greedy reachability");
        }
        return cb.finite_stretch_sum;
    };
    out.stretch_before = stretchcost(theta);
    StrategyProfile deviated = theta;
    deviated.set(0, out.alt);
    out.stretch_after = stretchcost(deviated);

    // Smallest alpha making the deviation a >= (big - eps)-factor improvement,
    // nudged to keep the inequality strict.
    out.target_factor = big - alpha_epsilon;
    out.alpha =
        ((big - alpha_epsilon) * out.stretch_after - out.stretch_before + 1.0) / alpha_epsilon;
    return out;
}

}  // namespace gnf
