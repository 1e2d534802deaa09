#include <benchmark/benchmark.h>

#include "einwave/causality.hpp"
#include "einwave/gauge.hpp"
#include "einwave/geometry.hpp"
#include "einwave/profiles.hpp"
#include "einwave/sobolev.hpp"

using namespace einwave;

namespace {

const ProfileFamily& family() {
  static const ProfileFamily f = ProfileFamily::build({0.1, 0.4});
  return f;
}

void BM_ProfileBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ProfileFamily::build({0.1, 0.4}));
}
BENCHMARK(BM_ProfileBuild)->Unit(benchmark::kMillisecond);

void BM_ChiTilde2(benchmark::State& state) {
  double s = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(family().chitilde2(s, 2));
    s = s < 2.0 ? s * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_ChiTilde2);

void BM_Ricci(benchmark::State& state) {
  const SpacetimePoint p{0.2, {1.1, 0.1, -0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(ricci(p, family()));
}
BENCHMARK(BM_Ricci);

void BM_GaugeResidual(benchmark::State& state) {
  const SpacetimePoint p{0.2, {1.1, 0.1, -0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(wave_gauge_residual(p, family()));
}
BENCHMARK(BM_GaugeResidual);

void BM_CurvatureNorm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(curvature_l2_norm(0.25, family()));
}
BENCHMARK(BM_CurvatureNorm)->Unit(benchmark::kMillisecond);

void BM_NormReport(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(norm_report(t, family()));
}
BENCHMARK(BM_NormReport)->Arg(0)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_BoundaryScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(boundary_scan({}, family()));
}
BENCHMARK(BM_BoundaryScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
