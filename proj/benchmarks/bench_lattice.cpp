#include <qhd/families.hpp>
#include <qhd/homology.hpp>
#include <qhd/lattice.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace qhd;

namespace {

void BM_DiagonalEmbed(benchmark::State & state)
{
    auto form = intersection_matrix(fpp_graph(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto r = diagonal_embed(form);
        benchmark::DoNotOptimize(r.nodes);
    }
}
BENCHMARK(BM_DiagonalEmbed)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Determinant(benchmark::State & state)
{
    auto form = intersection_matrix(fpp_graph(static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(determinant(form).value);
}
BENCHMARK(BM_Determinant)->DenseRange(2, 5);

void BM_SmithForm(benchmark::State & state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-9, 9);
    IntMatrix a(n, std::vector<BigInt>(n));
    for (auto & row : a)
        for (auto & x : row)
            x = entry(rng);
    for (auto _ : state) {
        auto s = smith_form(a);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_SmithForm)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);

void BM_FiberInvariants(benchmark::State & state)
{
    auto config = fpp_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto inv = fiber_invariants(config);
        benchmark::DoNotOptimize(inv.mu);
    }
}
BENCHMARK(BM_FiberInvariants)->Arg(2)->Arg(3);

} // namespace
