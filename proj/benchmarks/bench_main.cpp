#include "frackell/bell.hpp"
#include "frackell/gamma.hpp"
#include "frackell/mittag_leffler.hpp"
#include "frackell/poisson.hpp"
#include "frackell/sampler.hpp"
#include "frackell/stirling.hpp"

#include <benchmark/benchmark.h>

using namespace frackell;

static void BM_GammaReal(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  const Real a = parse_real("3.37", digits);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_real(a, digits));
}
BENCHMARK(BM_GammaReal)->Arg(50)->Arg(100)->Arg(400);

static void BM_MittagLeffler(benchmark::State& state) {
  // z = -range(0); mu = 1/2
  MLRequest req{MuParam("0.5"), Real(-state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ml_eval(req));
}
BENCHMARK(BM_MittagLeffler)->Arg(1)->Arg(5)->Arg(20);

static void BM_MittagLefflerQuarter(benchmark::State& state) {
  MLRequest req{MuParam("0.25"), Real(-5)};
  for (auto _ : state) benchmark::DoNotOptimize(ml_eval(req));
}
BENCHMARK(BM_MittagLefflerQuarter)->Unit(benchmark::kMillisecond);

static void BM_BuildTriangle(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_triangle(m));
}
BENCHMARK(BM_BuildTriangle)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_BellPoly(benchmark::State& state) {
  BellEvalContext ctx(MuParam("0.5"), 60);
  const Real x = parse_real("2.5", 50);
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bell_poly(ctx, x, m));
}
BENCHMARK(BM_BellPoly)->Arg(8)->Arg(60);

static void BM_PmfTable(benchmark::State& state) {
  PmfParams params(MuParam("0.5"), parse_real("1", 50), Real(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pmf_table(params, 60));
}
BENCHMARK(BM_PmfTable)->Arg(1)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_SampleCounts(benchmark::State& state) {
  DistributionTable table = pmf_table(PmfParams(MuParam("0.5"), Real(1), Real(1)), 40);
  for (auto _ : state) benchmark::DoNotOptimize(sample_counts(table, 100000, 7));
}
BENCHMARK(BM_SampleCounts)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
