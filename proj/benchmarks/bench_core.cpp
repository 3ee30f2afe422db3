#include <benchmark/benchmark.h>

#include "dgshock/eig.hpp"
#include "dgshock/profile.hpp"
#include "dgshock/scheme.hpp"
#include "dgshock/stability.hpp"

namespace {

using namespace dgshock;

DgScheme make_scheme(int p) {
  return DgScheme(Mesh1D{0.0, 1.0, 20}, p, NumericalFluxKind::Godunov, burgers(),
                  BoundaryData{1.0, -1.0});
}

void BM_ResidualSweep(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const DgScheme scheme = make_scheme(p);
  const ModalSolution sol =
      compose_profile_solution(scheme.mesh(), 10, profile(p == 0 ? 1 : p, 0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme.residual_all(sol));
  }
}
BENCHMARK(BM_ResidualSweep)->Arg(1)->Arg(2)->Arg(3);

void BM_Rk3Step(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const DgScheme scheme = make_scheme(p);
  ModalSolution sol = compose_profile_solution(scheme.mesh(), 10, profile(p, 0.2));
  const double dt = scheme.compute_dt(sol);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme.ssp_rk3_step(sol, dt));
  }
}
BENCHMARK(BM_Rk3Step)->Arg(1)->Arg(2)->Arg(3);

void BM_ProfileEval(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  double sc = -0.45;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile(p, sc));
    sc = (sc > 0.45) ? -0.45 : sc + 1e-4;
  }
}
BENCHMARK(BM_ProfileEval)->Arg(1)->Arg(2)->Arg(3);

void BM_NewtonOracle(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(newton_oracle(p, 0.3));
  }
}
BENCHMARK(BM_NewtonOracle)->Arg(1)->Arg(2)->Arg(3);

void BM_AssembledSpectrum(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const ModalSolution sol = compose_profile_solution(Mesh1D{0.0, 1.0, 20}, 10, profile(p, 0.3));
  const BlockTridiagonalOperator op =
      assemble(sol, NumericalFluxKind::Godunov, burgers(), 1.0 / (2 * p + 1), BoundaryData{1.0, -1.0});
  const DenseMatrix dense = op.dense();
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues(dense));
  }
}
BENCHMARK(BM_AssembledSpectrum)->Arg(1)->Arg(2)->Arg(3);

void BM_SteadyRun(benchmark::State& state) {
  BurgersSteadyConfig cfg;
  cfg.p = static_cast<int>(state.range(0));
  cfg.ubar = 0.1;
  cfg.tol = 1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_burgers_steady(cfg));
  }
}
BENCHMARK(BM_SteadyRun)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
