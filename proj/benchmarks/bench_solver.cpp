#include <qhd/families.hpp>
#include <qhd/pipelines.hpp>
#include <qhd/solver.hpp>

#include <benchmark/benchmark.h>

using namespace qhd;

namespace {

void BM_SolveFirstFpp(benchmark::State & state)
{
    auto tree = fpp_graph(static_cast<int>(state.range(0)));
    auto p = presentation_smooth(tree, first_legal_end(tree).value());
    for (auto _ : state) {
        auto r = solve(p, SolveMode{});
        benchmark::DoNotOptimize(r.nodes);
    }
}
BENCHMARK(BM_SolveFirstFpp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CountWahlChain(benchmark::State & state)
{
    auto tree = linear_from_fraction(static_cast<int>(state.range(0)), 1);
    auto p = presentation_smooth(tree, first_legal_end(tree).value());
    SolveMode mode;
    mode.emit = EmitMode::Count;
    for (auto _ : state) {
        auto r = solve(p, mode);
        benchmark::DoNotOptimize(r.labeled_count);
    }
}
BENCHMARK(BM_CountWahlChain)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_StarInstance(benchmark::State & state)
{
    auto p = star_presentation({StarFamily::C3, 2, {0, 0, 3}});
    for (auto _ : state) {
        auto r = solve(p, SolveMode{});
        benchmark::DoNotOptimize(r.status);
    }
}
BENCHMARK(BM_StarInstance)->Unit(benchmark::kMillisecond);

} // namespace
