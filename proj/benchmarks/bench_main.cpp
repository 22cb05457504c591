#include "bianchi/mv.hpp"
#include "bianchi/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace bianchi;

void BM_F2Rank(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(n);
    F2Matrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.set(r, c, rng() & 1);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_F2Rank)->Arg(64)->Arg(256)->Arg(512);

void BM_ClosureTe24(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(closure({gen_A(), gen_b()}, 100).size());
}
BENCHMARK(BM_ClosureTe24);

void BM_SmithNormalForm(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<int> entry(-9, 9);
    IntMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.at(r, c) = entry(rng);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m).rank);
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16);

void BM_AssemblePages(benchmark::State& state) {
    EquivariantComplex cx = build_gamma0_complex();
    QuotientStructure qs = build_quotient(cx);
    int q_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        E1Page e1 = assemble_e1(cx, qs, q_max);
        benchmark::DoNotOptimize(compute_e2(e1).dim(0, 1));
    }
}
BENCHMARK(BM_AssemblePages)->Arg(9)->Arg(25);

void BM_FullPipeline(benchmark::State& state) {
    GoldenValues golden = GoldenValues::load(BIANCHI_DATA_DIR "/golden_values.json");
    RunConfig cfg;
    for (auto _ : state) {
        PipelineResult r = run_pipeline(cfg, golden);
        benchmark::DoNotOptimize(r.exit_code);
    }
}
BENCHMARK(BM_FullPipeline);

}  // namespace

BENCHMARK_MAIN();
