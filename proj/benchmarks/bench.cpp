#include <benchmark/benchmark.h>

#include <random>

#include "pagevar/closed_form.hpp"
#include "pagevar/moment_matrix.hpp"
#include "pagevar/polygamma.hpp"
#include "pagevar/sampling.hpp"

namespace {

void BM_Digamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::digamma(x));
    x += 1e-9;  // defeat value caching without leaving the branch
  }
}
BENCHMARK(BM_Digamma);

void BM_Trigamma(benchmark::State& state) {
  double x = 5.21;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::trigamma(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Trigamma);

void BM_BuildMomentMatrix(benchmark::State& state) {
  const pagevar::SystemDims dims(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)) + 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::build_moment_matrix(dims, 1.5));
  }
}
BENCHMARK(BM_BuildMomentMatrix)->Arg(2)->Arg(4)->Arg(8);

void BM_TwoPointMoment(benchmark::State& state) {
  const pagevar::SystemDims dims(4, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::two_point_moment(dims, 1.01, 0.99));
  }
}
BENCHMARK(BM_TwoPointMoment);

void BM_SecondMomentNumeric(benchmark::State& state) {
  const pagevar::SystemDims dims(3, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::second_moment_numeric(dims));
  }
}
BENCHMARK(BM_SecondMomentNumeric);

void BM_ExactStats(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pagevar::SystemDims dims(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::exact_entropy_stats(dims));
  }
}
BENCHMARK(BM_ExactStats)->Arg(4)->Arg(12);

void BM_SampleSpectrum(benchmark::State& state) {
  const pagevar::SystemDims dims(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)));
  std::mt19937_64 rng(12345);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::sample_spectrum(dims, rng));
  }
}
BENCHMARK(BM_SampleSpectrum)->Arg(2)->Arg(4)->Arg(8);

void BM_EstimateStats(benchmark::State& state) {
  const pagevar::SystemDims dims(2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagevar::estimate_stats(dims, 2000, 42, 10));
  }
}
BENCHMARK(BM_EstimateStats);

}  // namespace

BENCHMARK_MAIN();
