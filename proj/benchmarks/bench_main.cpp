#include <benchmark/benchmark.h>

#include "centric/analysis.hpp"
#include "centric/datagen.hpp"
#include "centric/kmeans.hpp"
#include "centric/transforms.hpp"

namespace {

using namespace centric;

void BM_Lloyd(benchmark::State& state) {
    const LabeledDataset data = two_squares_3d(static_cast<std::size_t>(state.range(0)), 1.0, 1);
    LloydConfig config;
    config.k = 2;
    config.restarts = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lloyd(data.dataset, config).cost);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_Lloyd)->Args({2000, 1})->Args({2000, 20})->Args({10000, 20})->Unit(benchmark::kMillisecond);

void BM_KmeansIdeal(benchmark::State& state) {
    const int k = static_cast<int>(state.range(1));
    const auto n = static_cast<std::size_t>(state.range(0));
    const LabeledDataset data = gaussian_blobs(k, n / static_cast<std::size_t>(k), 2, 1.0, 3.0, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans_ideal(data.dataset, k).cost);
    }
    state.counters["partitions"] = stirling2(n, static_cast<std::size_t>(k));
}
BENCHMARK(BM_KmeansIdeal)->Args({12, 2})->Args({12, 3})->Unit(benchmark::kMillisecond);

void BM_CostPairwise(benchmark::State& state) {
    const LabeledDataset data = gaussian_blobs(4, static_cast<std::size_t>(state.range(0)) / 4, 5, 1.0, 4.0, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cost_pairwise(data.dataset, data.labels));
    }
}
BENCHMARK(BM_CostPairwise)->Arg(100)->Arg(1000)->Arg(4000);

void BM_Cost(benchmark::State& state) {
    const LabeledDataset data = gaussian_blobs(4, static_cast<std::size_t>(state.range(0)) / 4, 5, 1.0, 4.0, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cost(data.dataset, data.labels));
    }
}
BENCHMARK(BM_Cost)->Arg(100)->Arg(1000)->Arg(4000);

void BM_DistanceMatrix(benchmark::State& state) {
    const LabeledDataset data = two_squares_3d(static_cast<std::size_t>(state.range(0)), 1.0, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_matrix(data.dataset)(0, 1));
    }
}
BENCHMARK(BM_DistanceMatrix)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_GammaCheck(benchmark::State& state) {
    const LabeledDataset data = two_squares_3d(static_cast<std::size_t>(state.range(0)), 1.0, 5);
    const Dataset moved = angular_transform(data.dataset, two_squares_diagonal(), 0.05, Vector(3, 0.0),
                                            data.labels.members(0))
                              .dataset;
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_kleinberg_gamma_transform(data.dataset, moved, data.labels).valid);
    }
}
BENCHMARK(BM_GammaCheck)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_HDecompose(benchmark::State& state) {
    const LabeledDataset data = gaussian_blobs(3, 4, 3, 1.0, 3.0, 6);
    const IndexSet P = data.labels.members(0);
    const auto splits = sample_alternative_splits(data.labels, P, 3, 64, 7);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_decompose(data.dataset, data.labels, splits[i++ % splits.size()], P).quad_coeff);
    }
}
BENCHMARK(BM_HDecompose);

} // namespace
BENCHMARK_MAIN();
