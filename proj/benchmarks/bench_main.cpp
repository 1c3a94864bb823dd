#include <benchmark/benchmark.h>

#include "trispec/dirac1d.hpp"
#include "trispec/dirac2d.hpp"
#include "trispec/form.hpp"
#include "trispec/shooting.hpp"

using namespace trispec;

namespace {

void BM_SecularRoots(benchmark::State& state) {
  const auto p = FiberProblem::make(FiberFamily::G, RightTriangle(2, 1), 1.0, MassParam(5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues_in_window(p, {-200, 200}, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SecularRoots)->Arg(5)->Arg(20)->Arg(50);

void BM_ShootingRoots(benchmark::State& state) {
  const auto p = FiberProblem::make(FiberFamily::H, RightTriangle(1, 1), 1.0, MassParam(1));
  for (auto _ : state) benchmark::DoNotOptimize(shooting_eigenvalues(p, {-60, 60}, 5));
}
BENCHMARK(BM_ShootingRoots)->Unit(benchmark::kMillisecond);

void BM_Assembly(benchmark::State& state) {
  const RightTriangle t(2, 1);
  const auto mesh = build_mesh(t, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_form(mesh, t, MassParam(1)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assembly)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_Lambda1(benchmark::State& state) {
  const RightTriangle t(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda1_2d(t, MassParam(1), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Lambda1)->Arg(16)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
