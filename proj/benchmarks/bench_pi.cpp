#include <benchmark/benchmark.h>

#include "piforge/pi.hpp"

namespace {

// Args: digits, leaf size, workers.
void BM_PiDigits(benchmark::State& state) {
  const long digits = state.range(0);
  const piforge::PiOptions opts{static_cast<std::size_t>(state.range(1)), static_cast<unsigned>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(piforge::pi_digits(digits, opts));
  state.SetLabel(std::to_string(digits) + " digits");
}

BENCHMARK(BM_PiDigits)
    ->Args({10000, 32, 1})
    ->Args({100000, 8, 1})
    ->Args({100000, 32, 1})
    ->Args({100000, 128, 1})
    ->Args({100000, 32, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
