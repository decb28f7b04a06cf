// Microbenchmarks for the conversion pipeline.
//
// Cold = plan built inside the timed region (cache cleared each iteration),
// warm = plan reused from the cache, direct = dense reference path.
#include <benchmark/benchmark.h>

#include <vector>

#include "polyconv/conversions.hpp"
#include "polyconv/rng.hpp"
#include "polyconv/toeplitz.hpp"

namespace {

using namespace polyconv;

std::vector<double> test_vector(std::size_t n) {
  return rng::decay_vector(n, 1.5, 7);
}

void BM_Leg2ChebFastCold(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::vector<double> c = test_vector(n);
  ConvertOptions opts;
  opts.path = PathMode::fast;
  for (auto _ : state) {
    plan_cache_clear();
    benchmark::DoNotOptimize(leg2cheb(c, opts));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Leg2ChebFastCold)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Leg2ChebFastWarm(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::vector<double> c = test_vector(n);
  ConvertOptions opts;
  opts.path = PathMode::fast;
  leg2cheb(c, opts);  // populate the plan cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(leg2cheb(c, opts));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Leg2ChebFastWarm)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 16)
    ->Complexity();

void BM_Leg2ChebDirect(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::vector<double> c = test_vector(n);
  ConvertOptions opts;
  opts.path = PathMode::dense;
  for (auto _ : state) {
    benchmark::DoNotOptimize(leg2cheb(c, opts));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Leg2ChebDirect)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 13)
    ->Complexity(benchmark::oNSquared);

void BM_Cheb2JacRoundTripFast(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::vector<double> c = test_vector(n);
  ConvertOptions opts;
  opts.path = PathMode::fast;
  cheb2jac(c, 0.1, 0.3, opts);  // warm the cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        jac2cheb(cheb2jac(c, 0.1, 0.3, opts), 0.1, 0.3, opts));
  }
}
BENCHMARK(BM_Cheb2JacRoundTripFast)->Arg(1 << 12)->Arg(1 << 14);

void BM_ToeplitzApply(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::vector<double> col(n), row(n);
  for (std::size_t i = 0; i < n; ++i) {
    col[i] = 1.0 / double(i + 1);
    row[i] = 1.0 / double(2 * i + 1);
  }
  const toeplitz::ToeplitzOperator op(col, row);
  const std::vector<double> x = test_vector(n);
  std::vector<double> y(n);
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ToeplitzApply)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 18)
    ->Complexity(benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
