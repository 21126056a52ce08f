#pragma once

#include <vector>

#include "gnf/metric.hpp"
#include "gnf/profile.hpp"

namespace gnf {

// k half-open angular sectors [rotation + 2*pi*i/k, rotation + 2*pi*(i+1)/k)
// around each apex.
struct ConeSystem {
    int k = 8;
    double rotation = 0.0;
};

int cone_index(const ConeSystem& cones, const Vec2& apex, const Vec2& p);
double cone_bisector(const ConeSystem& cones, int index);

// Per node and nonempty cone, one edge to the node whose projection onto the
// cone bisector is closest to the apex; projection ties go to the smaller id.
StrategyProfile theta_graph(const std::vector<Vec2>& points, const ConeSystem& cones);

struct ThetaRoute {
    bool reached = false;
    bool greedy = false;     // strict distance descent on every hop
    std::vector<int> path;
    double length = 0.0;
};

// Cone-following forwarding: from each node take its edge into the cone that
// contains the target.
ThetaRoute theta_route(const std::vector<Vec2>& points, const ConeSystem& cones,
                       const StrategyProfile& theta, int u, int v, int step_limit = 10000);

// Stretch bound 1/(1 - 2 sin(pi/k)) of cone-following routing, valid for k > 6.
double stretch_bound_f(int k);

struct ApproxSelection {
    StrategyProfile profile;
    ConeSystem cones;
    double threshold = 0.0;       // alpha cutoff between the two constructions
    double claimed_factor = 0.0;
};

// k = 6 when alpha >= (12*sqrt(3) - sqrt(2) - 1)(n-1), else k = 8.
ApproxSelection select_approx_construction(const std::vector<Vec2>& points, double alpha);

// Family of rotated u/v/w triples such that for every global cone rotation at
// least one pair (u_i, w_i) has no greedy path in the Theta_k graph, k <= 5.
struct SmallKCounterexample {
    std::vector<Vec2> points;
    int k = 0;
    double epsilon = 0.0;
    int copies = 0;
    std::vector<std::pair<int, int>> pairs;  // (u_i, w_i)
};

SmallKCounterexample small_k_counterexample(int k, double epsilon = 1e-3);

// Instance where the Theta_k graph is provably far from stable: agent u
// builds ceil(k/2)+1 cone edges but a single edge to v retains greedy paths
// to every node. alpha is chosen so the deviation improves u's cost by a
// factor of at least ceil(k/2)+1 - alpha_epsilon.
struct ThetaLowerBound {
    std::vector<Vec2> points;
    ConeSystem cones;
    int u = 0;
    std::vector<int> alt;        // the deviation strategy {v}
    double alpha = 0.0;
    double epsilon = 0.0;
    double stretch_before = 0.0; // u's stretchcost in the Theta_k graph
    double stretch_after = 0.0;  // u's stretchcost after deviating to {v}
    double target_factor = 0.0;  // ceil(k/2)+1 - epsilon
    int theta_edges_of_u = 0;
};

ThetaLowerBound lower_bound_instance(int k, double alpha_epsilon = 0.5);

}  // namespace gnf
