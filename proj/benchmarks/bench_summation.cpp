#include <benchmark/benchmark.h>

#include "piforge/catalog.hpp"
#include "piforge/families.hpp"
#include "piforge/numeric.hpp"

namespace {

using namespace piforge;

// Direct summation of a catalog row; range(0) is the worker count.
void BM_DirectSum(benchmark::State& state, const char* id, long digits) {
  const Formula& f = embedded_catalog().at(id);
  SumOptions opts;
  opts.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(direct_sum(f.family, f.lin0, f.lin1, f.arg, digits, opts));
}
BENCHMARK_CAPTURE(BM_DirectSum, prop7_s14_row1_200d, "p7-s14-r1", 200)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DirectSum, chudnovsky_1000d, "intro-chudnovsky", 1000)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

// Capped factorized path on a companion with w1 close to 1.
void BM_SlowSeries(benchmark::State& state) {
  const Formula& f = embedded_catalog().at("appx-ex3-hat");
  for (auto _ : state) benchmark::DoNotOptimize(slow_series_sum(f, 15, 1000000));
}
BENCHMARK(BM_SlowSeries)->Unit(benchmark::kMillisecond);

// Exact family coefficients; the per-family cache is bypassed by A_n_full.
void BM_ConvolutionCoefficient(benchmark::State& state) {
  const FamilySpec spec = make_spec(Family::PROP7, Rational(1, 6));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(A_n_full(spec, n));
}
BENCHMARK(BM_ConvolutionCoefficient)->Arg(50)->Arg(200);

}  // namespace
