#include <benchmark/benchmark.h>

#include <random>

#include "gnf/game.hpp"
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

void BM_AllPairsGreedy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto pts = random_points(n, 7);
    auto metric = gnf::metric_from_points(pts);
    auto theta = gnf::theta_graph(pts, gnf::ConeSystem{8, 0.0});
    auto net = gnf::build_network(metric, theta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gnf::all_pairs_greedy(net));
    }
    state.SetComplexityN(n);
}

void BM_GreedyColumn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto pts = random_points(n, 11);
    auto metric = gnf::metric_from_points(pts);
    auto theta = gnf::theta_graph(pts, gnf::ConeSystem{8, 0.0});
    auto net = gnf::build_network(metric, theta);
    std::vector<std::optional<double>> column;
    int target = 0;
    for (auto _ : state) {
        gnf::greedy_to_target(net, target, column);
        benchmark::DoNotOptimize(column);
        target = (target + 1) % n;
    }
}

}  // namespace

BENCHMARK(BM_AllPairsGreedy)->Arg(50)->Arg(100)->Arg(200)->Complexity();
BENCHMARK(BM_GreedyColumn)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
