#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "liqdem/accuracy.hpp"
#include "liqdem/model.hpp"
#include "liqdem/optimal.hpp"
#include "liqdem/rng.hpp"
#include "liqdem/shares.hpp"

namespace {

using namespace liqdem;

WeightedProfile random_profile(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix rows(n);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < n; ++i) rows[i] = random_stochastic_row(rng, n, all);
    return WeightedProfile::from_matrix(std::move(rows));
}

AccuracyProfile random_accuracies(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> q(n);
    for (auto& v : q) v = 0.5 + 0.49 * uniform01(rng);
    return AccuracyProfile(std::move(q));
}

void BM_ExpectedWeightsExact(benchmark::State& state) {
    const auto D = random_profile(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(expected_weights_exact(D));
}
BENCHMARK(BM_ExpectedWeightsExact)->Arg(4)->Arg(5)->Arg(6);

void BM_ExpectedWeightsPaths(benchmark::State& state) {
    const auto D = random_profile(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(expected_weights_paths(D));
}
BENCHMARK(BM_ExpectedWeightsPaths)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_GroupAccuracyExact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto q = random_accuracies(n, 11);
    std::vector<double> w(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(group_accuracy(q, w));
}
BENCHMARK(BM_GroupAccuracyExact)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_OptimalDelegation(benchmark::State& state) {
    const auto q = random_accuracies(static_cast<int>(state.range(0)), 13);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_delegation(q));
}
BENCHMARK(BM_OptimalDelegation)->Arg(16)->Arg(64)->Arg(256);

void BM_PowerIterate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto D = random_profile(n, 17);
    const std::vector<double> ones(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(power_iterate(D, ones));
}
BENCHMARK(BM_PowerIterate)->Arg(8)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
