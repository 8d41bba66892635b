#include <qhd/json_io.hpp>
#include <qhd/pipelines.hpp>

#include <benchmark/benchmark.h>

using namespace qhd;

namespace {

void BM_EnumerateTwoNode(benchmark::State & state)
{
    auto spec = corollary_spec(static_cast<std::size_t>(state.range(0)), 2, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_trees(spec.constraints).size());
}
BENCHMARK(BM_EnumerateTwoNode)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_SmallSweep(benchmark::State & state)
{
    auto spec = sweep_spec_from_json(read_json(QHD_CORPUS_DIR "/small_sweep.json"));
    SweepOptions opts;
    opts.jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto summary = corollary_sweep(spec, opts, [](const SweepRecord &) {});
        benchmark::DoNotOptimize(summary.survivors);
    }
}
BENCHMARK(BM_SmallSweep)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace
