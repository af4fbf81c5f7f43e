#include <benchmark/benchmark.h>

#include "surfcov/census.hpp"
#include "surfcov/constants.hpp"
#include "surfcov/covers.hpp"
#include "surfcov/distinguisher.hpp"
#include "surfcov/hyperbolic.hpp"
#include "surfcov/trace_spectra.hpp"

using namespace surfcov;

namespace {

const SurfaceSig kGenus2(2);

PermCover character_cover(std::array<int, 4> chi) {
    RawCover raw{2, 2, {}};
    for (int v : chi) raw.perms.push_back(v ? std::vector<int>{2, 1} : std::vector<int>{1, 2});
    return validate_cover(raw);
}

}  // namespace

static void BM_DehnReduce(benchmark::State& state) {
    const Word w = power(parse_word("a1 b1 A1 B1 a2 b2 A2", kGenus2), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dehn_reduce(w));
}
BENCHMARK(BM_DehnReduce)->Arg(1)->Arg(8)->Arg(64);

static void BM_EnumerateClasses(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(kGenus2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateClasses)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

// All classes of one length, one self-intersection count per class.
static void BM_SelfIntersection(benchmark::State& state) {
    const auto m = fuchsian_generators(kGenus2);
    std::vector<CurveClass> classes;
    for (const auto& c : enumerate_classes(kGenus2, static_cast<int>(state.range(0))))
        if (c.length() == static_cast<std::size_t>(state.range(0))) classes.push_back(c);
    for (auto _ : state)
        for (const auto& c : classes) benchmark::DoNotOptimize(self_intersection(m, c));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * classes.size()));
}
BENCHMARK(BM_SelfIntersection)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_SelfIntersectionQuad(benchmark::State& state) {
    const auto m = fuchsian_generators(kGenus2).with_high_precision(true);
    const CurveClass c = dehn_reduce(parse_word("a1 a1 b2 A1 b1", kGenus2));
    for (auto _ : state) benchmark::DoNotOptimize(self_intersection(m, c));
}
BENCHMARK(BM_SelfIntersectionQuad)->Unit(benchmark::kMicrosecond);

static void BM_EnumerateCovers(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_covers(kGenus2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateCovers)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_IsomorphicCovers(benchmark::State& state) {
    const auto corpus = enumerate_covers(kGenus2, 3);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(isomorphic_covers(corpus[i % corpus.size()], corpus[(7 * i + 3) % corpus.size()]));
        ++i;
    }
}
BENCHMARK(BM_IsomorphicCovers)->Unit(benchmark::kMicrosecond);

static void BM_FindWitness(benchmark::State& state) {
    const auto m = fuchsian_generators(kGenus2);
    const PermCover p = character_cover({1, 0, 0, 0}), q = character_cover({0, 0, 1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(find_witness(m, p, q, 4));
}
BENCHMARK(BM_FindWitness)->Unit(benchmark::kMillisecond);

static void BM_CensusCount(benchmark::State& state) {
    for (auto _ : state)
        for (long k = 1; k <= 50; ++k)
            for (long N = 1; N <= 50; ++N) benchmark::DoNotOptimize(census_count(N, k));
}
BENCHMARK(BM_CensusCount)->Unit(benchmark::kMicrosecond);

static void BM_SummatorySweep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(summatory_sweep(state.range(0), 300));
}
BENCHMARK(BM_SummatorySweep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_PipelineM(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pipeline_M(2, state.range(0), state.range(0)));
}
BENCHMARK(BM_PipelineM)->Arg(2)->Arg(3)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_RandomRep(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(random_rep(kGenus2, static_cast<int>(state.range(0)), Field::Complex, seed++));
}
BENCHMARK(BM_RandomRep)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

static void BM_SimpleTraceSpectrum(benchmark::State& state) {
    const auto m = fuchsian_generators(kGenus2);
    const auto elevations = simple_elevations(m, character_cover({1, 0, 0, 0}), 4);
    const LinearRep rep = random_rep(kGenus2, 2, Field::Complex, 7);
    for (auto _ : state) benchmark::DoNotOptimize(simple_trace_spectrum(elevations, rep, 4));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * elevations.size()));
}
BENCHMARK(BM_SimpleTraceSpectrum)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
