#include <benchmark/benchmark.h>

#include "pomlab/nsbox.hpp"
#include "pomlab/optimize.hpp"
#include "pomlab/pomgame.hpp"
#include "pomlab/qcore.hpp"
#include "pomlab/rng.hpp"
#include "pomlab/toybit.hpp"

using namespace pomlab;

static void BM_eigh(benchmark::State &state) {
    Rng rng(1);
    Matrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(h));
    }
}
BENCHMARK(BM_eigh)->Arg(2)->Arg(4)->Arg(9)->Arg(16);

static void BM_pom_success_quantum(benchmark::State &state) {
    PomInstance inst(2);
    auto strat = quantum_optimal_strategy();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pom_success(inst, strat));
    }
}
BENCHMARK(BM_pom_success_quantum);

static void BM_run_rounds(benchmark::State &state) {
    PomInstance inst(2);
    auto strat = quantum_optimal_strategy();
    const auto rounds = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_rounds(inst, strat, rounds, 0, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_run_rounds)->Arg(1 << 16)->Arg(1 << 20);

static void BM_is_local(benchmark::State &state) {
    auto box = make_isotropic_box(0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_local(box));
    }
}
BENCHMARK(BM_is_local);

static void BM_depolarize(benchmark::State &state) {
    auto box = make_local_box({{0, 1}, {1, 1}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(depolarize(box));
    }
}
BENCHMARK(BM_depolarize);

static void BM_classical_oracle(benchmark::State &state) {
    const bool exact = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical_oracle(2, 4, {.exact_rational = exact}));
    }
}
BENCHMARK(BM_classical_oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_seesaw(benchmark::State &state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(seesaw_chsh({.dim = dim, .restarts = 4, .tol = 1e-12, .seed = 0, .threads = 1}));
    }
}
BENCHMARK(BM_seesaw)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_toy_oracle(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(toy_pom_oracle());
    }
}
BENCHMARK(BM_toy_oracle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
