#include <benchmark/benchmark.h>

#include <random>

#include "gnf/equilibria.hpp"
#include "gnf/one_two.hpp"

namespace {

gnf::RatMetric random_one_two(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> ones;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng() & 1) ones.push_back({u, v});
    return gnf::metric_from_one_two(n, ones);
}

void BM_BestResponseExact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto m = random_one_two(n, 3);
    auto s = gnf::max_dsg(m);
    s.strategies[0].clear();
    auto z = gnf::ZPolicyT<gnf::Rat>::lex();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gnf::best_response_exact(m, s, 0, gnf::Rat(1), z, n));
    }
}

void BM_GreedyEquilibriumCheck(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto m = random_one_two(n, 5);
    auto mode = n <= 20 ? gnf::SolveMode::exact : gnf::SolveMode::greedy;
    auto s = gnf::bdsg(m, gnf::Rat(1), mode, 20);
    auto z = gnf::ZPolicyT<gnf::Rat>::lex();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gnf::is_greedy_equilibrium(m, s, gnf::Rat(1), z));
    }
}

void BM_BdsgConstruction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto m = random_one_two(n, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gnf::bdsg(m, gnf::Rat(2)));
    }
}

}  // namespace

BENCHMARK(BM_BestResponseExact)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(BM_GreedyEquilibriumCheck)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_BdsgConstruction)->Arg(10)->Arg(16)->Arg(20);
