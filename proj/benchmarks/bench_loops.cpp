#include <benchmark/benchmark.h>

#include <random>

#include "tcmc/dpw.hpp"
#include "tcmc/factorization.hpp"
#include "tcmc/potentials.hpp"
#include "tcmc/sym.hpp"

using namespace tcmc;

namespace {

TruncatedLoop random_generator(std::mt19937_64& rng, int order, int lo, int hi,
                               double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    TruncatedLoop g(order, true);
    for (int k = lo; k <= hi; ++k) {
        if (!g.in_window(k)) continue;
        if ((k % 2) == 0) {
            const double a = u(rng);
            g.coeff(k) = Mat2{a, 0, 0, -a};
        } else {
            g.coeff(k) = Mat2{0, u(rng), u(rng), 0};
        }
    }
    return g;
}

TruncatedLoop big_cell_loop(std::mt19937_64& rng, int order) {
    const TruncatedLoop minus =
        loop_exponential(random_generator(rng, order, -2, -1, 0.25), 1.0);
    const TruncatedLoop plus =
        loop_exponential(random_generator(rng, order, 0, 2, 0.25), 1.0);
    return loop_multiply(minus, plus);
}

} // namespace

static void BM_LoopMultiply(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int n = static_cast<int>(state.range(0));
    const TruncatedLoop a = big_cell_loop(rng, n);
    const TruncatedLoop b = big_cell_loop(rng, n);
    for (auto _ : state) {
        double tail = 0.0;
        benchmark::DoNotOptimize(loop_multiply(a, b, &tail));
    }
}
BENCHMARK(BM_LoopMultiply)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_BirkhoffSplit(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const int n = static_cast<int>(state.range(0));
    const TruncatedLoop gamma = big_cell_loop(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(birkhoff_split(gamma, SplitConvention::minus_plus));
    }
}
BENCHMARK(BM_BirkhoffSplit)->Arg(8)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_IwasawaPairSplit(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const int n = static_cast<int>(state.range(0));
    const TruncatedLoop psi1 =
        loop_exponential(random_generator(rng, n, 0, 1, 0.3), 1.0);
    const TruncatedLoop psi2 =
        loop_exponential(random_generator(rng, n, -1, 0, 0.3), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(iwasawa_pair_split(psi1, psi2));
    }
}
BENCHMARK(BM_IwasawaPairSplit)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_BuildExtendedFraming(benchmark::State& state) {
    const int n_grid = static_cast<int>(state.range(0));
    const Grid g = Grid::make(-1, 1, -1, 1, n_grid, n_grid);
    const PotentialPair pot = builtin_potential("hyperbolic_cylinder");
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_extended_framing(pot, g, 16, 16));
    }
}
BENCHMARK(BM_BuildExtendedFraming)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

static void BM_SymImmersion(benchmark::State& state) {
    const Grid g = Grid::make(-1, 1, -1, 1, 33, 33);
    const FrameField f =
        build_extended_framing(builtin_potential("circular_cylinder"), g, 16, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_immersion(f, 1.0, 0.5));
    }
}
BENCHMARK(BM_SymImmersion)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
