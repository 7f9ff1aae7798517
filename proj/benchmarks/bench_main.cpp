#include <benchmark/benchmark.h>

#include "scl/linalg.hpp"

namespace {

void bm_rref(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  scl::MatQ m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = scl::Rat(i * j + 1, i + j + 1);
  for (auto _ : state) {
    scl::MatQ copy = m;
    benchmark::DoNotOptimize(scl::rref(copy));
  }
}
BENCHMARK(bm_rref)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
