#include <benchmark/benchmark.h>

#include <random>

#include "gnf/theta.hpp"

namespace {

std::vector<gnf::Vec2> random_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::vector<gnf::Vec2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    return pts;
}

void BM_ThetaGraph(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto pts = random_points(n, 21);
    gnf::ConeSystem cones{static_cast<int>(state.range(1)), 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gnf::theta_graph(pts, cones));
    }
    state.SetComplexityN(n);
}

void BM_ThetaRouteAllPairs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto pts = random_points(n, 23);
    gnf::ConeSystem cones{8, 0.0};
    auto theta = gnf::theta_graph(pts, cones);
    for (auto _ : state) {
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                benchmark::DoNotOptimize(gnf::theta_route(pts, cones, theta, u, v));
            }
    }
}

}  // namespace

BENCHMARK(BM_ThetaGraph)->Args({200, 6})->Args({200, 8})->Args({1000, 8})->Complexity();
BENCHMARK(BM_ThetaRouteAllPairs)->Arg(100)->Arg(200);
