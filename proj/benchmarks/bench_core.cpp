#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>

#include "purecode/breeding.hpp"
#include "purecode/channel.hpp"
#include "purecode/protocol.hpp"
#include "purecode/recursion.hpp"

namespace {

void BM_expected_entropy(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(purecode::expected_entropy(k, 0.85));
    }
}
BENCHMARK(BM_expected_entropy)->Arg(8)->Arg(14)->Arg(18)->Arg(22);

void BM_solve_threshold(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(purecode::solve_threshold(k));
    }
}
BENCHMARK(BM_solve_threshold)->Arg(1)->Arg(5)->Arg(10);

void BM_enumerate_block(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(purecode::enumerate_block(k, 0.85));
    }
}
BENCHMARK(BM_enumerate_block)->Arg(6)->Arg(10);

void BM_simulate_block(benchmark::State& state) {
    const std::uint64_t shots = 100000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(purecode::simulate_block(5, 0.85, shots, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(shots) * state.iterations());
}
BENCHMARK(BM_simulate_block);

void BM_decode_posterior(benchmark::State& state) {
    const int n_pairs = 8, m = 12;
    const auto masks = purecode::random_masks(m, n_pairs, 7);
    purecode::SplitMix64 rng(7);
    const auto truth = purecode::random_syndrome_string(n_pairs, 0.95, rng);
    const auto parities = purecode::collect_parities(truth, masks);
    for (auto _ : state) {
        benchmark::DoNotOptimize(purecode::decode_posterior(parities, masks, n_pairs, 0.95));
    }
}
BENCHMARK(BM_decode_posterior);

void BM_entangled_fraction_search(benchmark::State& state) {
    using C = std::complex<double>;
    const purecode::KrausOp k0{C(1.0), C(0.0), C(0.0), C(0.8)};
    const purecode::KrausOp k1{C(0.0), C(0.6), C(0.0), C(0.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(purecode::fully_entangled_fraction({k0, k1}));
    }
}
BENCHMARK(BM_entangled_fraction_search);

}  // namespace

BENCHMARK_MAIN();
