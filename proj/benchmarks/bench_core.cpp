#include <benchmark/benchmark.h>

#include "slassure/engine.hpp"
#include "slassure/simgen.hpp"

using namespace slassure;

namespace {

void BM_OpinionFromEvidence(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(opinion_from_evidence({2334, 106, 2}, 0.5));
    }
}
BENCHMARK(BM_OpinionFromEvidence);

void BM_ApplyUpdate(benchmark::State& state) {
    const Opinion claim = Opinion::make(0.625, 0.125, 0.25, 0.5);
    const Opinion spi = opinion_from_evidence({7, 3, 2}, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_update(claim, spi));
    }
}
BENCHMARK(BM_ApplyUpdate);

void BM_WindowedStream(benchmark::State& state) {
    ScenarioSpec scenario;
    scenario.seed = 3;
    SegmentSpec seg;
    seg.n_frames = state.range(0);
    seg.cones_min = 2;
    seg.cones_max = 5;
    seg.per_cone_miss_probability = 0.1;
    scenario.segments = {seg};
    const auto log = generate_log(scenario);

    SpiSpec spec;
    spec.id = "spi";
    spec.claim_id = "G2";

    for (auto _ : state) {
        benchmark::DoNotOptimize(windowed_stream(log, spec));
    }
    state.SetItemsProcessed(state.iterations() * log.size());
}
BENCHMARK(BM_WindowedStream)->Arg(1000)->Arg(10000);

void BM_Replay(benchmark::State& state) {
    ScenarioSpec scenario;
    scenario.seed = 3;
    SegmentSpec seg;
    seg.n_frames = state.range(0);
    seg.cones_min = 2;
    seg.cones_max = 5;
    seg.per_cone_miss_probability = 0.1;
    scenario.segments = {seg};
    const auto log = generate_log(scenario);

    SpiSpec spec;
    spec.id = "spi";
    spec.claim_id = "G2";
    ArgumentNode goal;
    goal.id = "G2";
    goal.kind = NodeKind::goal;
    goal.opinion = opinion_from_evidence({2334, 106, 2}, 0.5);
    const ArgumentGraph graph({goal}, {}, {});

    for (auto _ : state) {
        benchmark::DoNotOptimize(run_replay(graph, "G2", log, spec));
    }
    state.SetItemsProcessed(state.iterations() * log.size());
}
BENCHMARK(BM_Replay)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
