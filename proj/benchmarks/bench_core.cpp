#include <benchmark/benchmark.h>

#include "calkin/isometrize.hpp"
#include "calkin/obstruction.hpp"
#include "calkin/presets.hpp"
#include "support/oracle.hpp"

using namespace calkin;

static void BM_Compose(benchmark::State& state) {
  testing::Rng rng(1);
  const int degree = static_cast<int>(state.range(0));
  const StructuredOperator a = testing::random_operator(rng, degree, 8);
  const StructuredOperator b = testing::random_operator(rng, degree, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(a, b));
  }
}
BENCHMARK(BM_Compose)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_Gram(benchmark::State& state) {
  const OperatorTuple t = make_preset("banded-spherical");
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram(t));
  }
}
BENCHMARK(BM_Gram);

static void BM_Truncate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OperatorTuple t = make_preset("chavan-counterexample");
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncate(t[0], n, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Truncate)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_KernelBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OperatorTuple t = make_preset("chavan-counterexample");
  const Matrix section = row_truncate(t, n, default_margin(t));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_basis(section));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_KernelBasis)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_Winding(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  const LaurentPoly symbol({{1, 1.0}, {0, -0.5}, {-2, 0.25}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(winding_number(symbol, grid));
  }
}
BENCHMARK(BM_Winding)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_Isometrize(benchmark::State& state) {
  const OperatorTuple t = make_preset("chavan-counterexample");
  for (auto _ : state) {
    benchmark::DoNotOptimize(isometrize(t));
  }
}
BENCHMARK(BM_Isometrize)->Unit(benchmark::kMillisecond);

static void BM_FredholmIndex(benchmark::State& state) {
  const StructuredOperator op = right_shift();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fredholm_index(op));
  }
}
BENCHMARK(BM_FredholmIndex)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
