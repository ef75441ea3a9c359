#include <coderiv/amz.hpp>
#include <coderiv/covering.hpp>
#include <coderiv/derivatives.hpp>
#include <coderiv/polyid.hpp>

#include <benchmark/benchmark.h>

using namespace coderiv;

static void BM_SigmaMin2(benchmark::State& state) {
  const Mat2 m = jacobian_f(Point2(0.3, -1.7));
  for (auto _ : state) benchmark::DoNotOptimize(sigma_min(m));
}
BENCHMARK(BM_SigmaMin2);

static void BM_SigmaMin4(benchmark::State& state) {
  const Mat4 m = jacobian_h(Point4(0.3, -1.7, 2.0, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(sigma_min(m));
}
BENCHMARK(BM_SigmaMin4);

static void BM_CoveringSpectral(benchmark::State& state) {
  const auto map = static_cast<MapId>(state.range(0));
  const VecX z = map == MapId::F2 ? VecX(Point2(0.3, -1.7)) : VecX(Point4(0.3, -1.7, 2.0, 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(covering_estimate(map, z, default_etas(), 512, 64, CoveringMethod::kSpectral, 1));
  }
}
BENCHMARK(BM_CoveringSpectral)->Arg(static_cast<int>(MapId::F2))->Arg(static_cast<int>(MapId::G4));

static void BM_CoveringDefinitional(benchmark::State& state) {
  const Point2 z(0.3, -1.7);
  const int y_samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        covering_estimate(MapId::F2, z, default_etas(), y_samples, 64, CoveringMethod::kDefinitional, 1));
  }
}
BENCHMARK(BM_CoveringDefinitional)->Arg(512)->Arg(4096);

static void BM_FNormIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(poly::verify_f_norm_identity());
}
BENCHMARK(BM_FNormIdentity);

static void BM_GNormIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(poly::verify_g_norm_identity());
}
BENCHMARK(BM_GNormIdentity)->Unit(benchmark::kMillisecond);

static void BM_NewtonSolve(benchmark::State& state) {
  const Scenario sc = load_scenario(CODERIV_SCENARIO_DIR "/scaled_linear.scn");
  for (auto _ : state) benchmark::DoNotOptimize(solve_parametric(sc, 0.7));
}
BENCHMARK(BM_NewtonSolve);
