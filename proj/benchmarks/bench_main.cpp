#include <benchmark/benchmark.h>

#include <cmath>

#include "epct/characteristics.hpp"
#include "epct/coldion.hpp"
#include "epct/phaseplane.hpp"
#include "epct/thresholds.hpp"

using namespace epct;

static void BM_SolveP(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    auto curve = solve_P(1.0, nu, 4.0);
    benchmark::DoNotOptimize(curve.s_hi());
  }
}
BENCHMARK(BM_SolveP)->Arg(0)->Arg(5)->Arg(30);

static void BM_CurveEval(benchmark::State& state) {
  const auto curve = solve_P(1.0, 0.5, 4.0);
  double s = 0.0;
  for (auto _ : state) {
    s += 0.0137;
    if (s >= curve.s_hi()) s = 0.0;
    benchmark::DoNotOptimize(curve(s));
  }
}
BENCHMARK(BM_CurveEval);

static void BM_RepulsiveThresholds(benchmark::State& state) {
  const Params params{0.5, 1, 1.0, 1.2};
  for (auto _ : state) {
    RepulsiveThresholds th(params, 4.0);
    benchmark::DoNotOptimize(th.closing().holds);
  }
}
BENCHMARK(BM_RepulsiveThresholds);

static void BM_RegionSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RepulsiveThresholds th({0.5, 1, 1.0, 1.2}, 4.0);
  const SweepGrid grid{-3.0, 3.0, n, 0.0, 3.0, n};
  for (auto _ : state) {
    auto cells = region_sweep(grid, th, 1e-9);
    benchmark::DoNotOptimize(cells.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_RegionSweep)->Arg(50)->Arg(200);

static void BM_SimulateWs(benchmark::State& state) {
  const Params params{0.5, 1, 1.0, 1.2};
  const Background bg = Background::sinusoid(1.1, 0.1, 2.0);
  for (auto _ : state) {
    auto sim = simulate_ws({0.2, 1.0}, params, bg, 100.0);
    benchmark::DoNotOptimize(sim.trajectory.steps());
  }
}
BENCHMARK(BM_SimulateWs);

static void BM_Characteristics(benchmark::State& state) {
  const auto datum = InitialDatum::gaussian(1.0, 0.3, 0.4);
  const UniformGrid labels{-8.0, 8.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    auto res = solve_characteristics(datum, 1.0, 1, 0.0, labels, 1.0);
    benchmark::DoNotOptimize(res.states.size());
  }
}
BENCHMARK(BM_Characteristics)->Arg(101)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_VEval(benchmark::State& state) {
  double z = -1.0;
  for (auto _ : state) {
    z += 0.01;
    if (z > 1.0) z = -1.0;
    benchmark::DoNotOptimize(V_eval(z));
  }
}
BENCHMARK(BM_VEval);

static void BM_PoissonNewton(benchmark::State& state) {
  const UniformGrid grid{-20.0, 20.0, static_cast<std::size_t>(state.range(0))};
  std::vector<double> rho(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) rho[i] = 1.0 + 0.5 * std::exp(-grid.node(i) * grid.node(i));
  for (auto _ : state) {
    auto phi = solve_poisson_mb(rho, grid);
    benchmark::DoNotOptimize(phi.data());
  }
}
BENCHMARK(BM_PoissonNewton)->Arg(801)->Arg(3201);
BENCHMARK_MAIN();
