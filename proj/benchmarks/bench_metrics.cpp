// Microbenchmarks for the per-log metric families over synthetic logs of
// the study's shapes. Run with --benchmark_filter=Alt or Rp to isolate one.

#include <cstdint>

#include <benchmark/benchmark.h>

#include "tfl/episode_log.hpp"
#include "tfl/metrics_alt.hpp"
#include "tfl/metrics_classic.hpp"
#include "tfl/metrics_rp.hpp"

namespace {

tfl::EpisodeLog shared_log(int n, std::int64_t episodes) {
    return tfl::make_random_log(n, static_cast<std::size_t>(episodes),
                                0x7f317f31);
}

void BM_ClassicFamily(benchmark::State& state) {
    const auto log = shared_log(static_cast<int>(state.range(0)), state.range(1));
    for (auto _ : state) {
        const tfl::RewardTotals totals = tfl::RewardTotals::from_log(log);
        benchmark::DoNotOptimize(tfl::efficiency(totals));
        benchmark::DoNotOptimize(tfl::reward_fairness(totals));
    }
}

void BM_AltFamily(benchmark::State& state) {
    const auto log = shared_log(static_cast<int>(state.range(0)), state.range(1));
    for (auto _ : state) {
        tfl::AltScores scores = tfl::alt_metric_family(log);
        benchmark::DoNotOptimize(scores);
    }
}

void BM_RpFamily(benchmark::State& state) {
    const auto log = shared_log(static_cast<int>(state.range(0)), state.range(1));
    for (auto _ : state) {
        tfl::RpFamilyScores scores = tfl::rp_family(log);
        benchmark::DoNotOptimize(scores);
    }
}

void study_shapes(benchmark::internal::Benchmark* bench) {
    bench->Args({2, 4000})
        ->Args({3, 9441})
        ->Args({5, 31840})
        ->Args({8, 174583})
        ->Args({10, 385282})
        ->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_ClassicFamily)->Apply(study_shapes);
BENCHMARK(BM_AltFamily)->Apply(study_shapes);
BENCHMARK(BM_RpFamily)->Apply(study_shapes);

}  // namespace

BENCHMARK_MAIN();
