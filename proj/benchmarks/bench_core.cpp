#include <benchmark/benchmark.h>

#include "edg/experiment.hpp"
#include "edg/init.hpp"
#include "edg/solvers.hpp"

using namespace edg;

namespace {

struct Fixture {
  PointConfig truth;
  Observations obs;
  LowRankFactor x0;
};

Fixture make(int n, double rate) {
  ExperimentSpec s;
  s.dataset = Dataset::RandomGaussian;
  s.n = n;
  Fixture f{generate_dataset(s), {}, {}};
  f.obs = measure(f.truth, sample_uniform_replacement(n, samples_for_rate(n, rate), 1));
  f.x0 = init_one_step(f.obs, n, 3);
  return f;
}

void BM_RomegaDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fixture f = make(n, 0.1);
  const Matrix x = gram_from_points(f.truth).entries;
  for (auto _ : state) benchmark::DoNotOptimize(r_omega(x, f.obs.omega));
}
BENCHMARK(BM_RomegaDense)->Arg(200)->Arg(1000);

void BM_VSumProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fixture f = make(n, 0.1);
  std::vector<double> coef(f.obs.values);
  for (auto _ : state) benchmark::DoNotOptimize(v_sum_product(f.obs.omega, coef, f.x0.basis));
}
BENCHMARK(BM_VSumProduct)->Arg(1000)->Arg(4000);

void BM_RetractStructured(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fixture f = make(n, 0.1);
  const std::vector<double> resid = residual_values(f.obs, f.x0);
  const TangentVector t = project_tangent_from_product(f.x0, w_sum_product(f.obs.omega, resid, f.x0.basis));
  for (auto _ : state) benchmark::DoNotOptimize(retract_structured(f.x0, 1.0, t, 3));
}
BENCHMARK(BM_RetractStructured)->Arg(1000)->Arg(4000);

void BM_SolverIteration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fixture f = make(n, 0.1);
  SolverConfig cfg;
  cfg.max_iters = 1;
  cfg.variant = state.range(1) ? Variant::PseudoGradient : Variant::FrameDescent;
  for (auto _ : state) benchmark::DoNotOptimize(solve(f.obs, cfg, f.x0));
}
BENCHMARK(BM_SolverIteration)->Args({1000, 0})->Args({1000, 1})->Args({4000, 0});

}  // namespace
BENCHMARK_MAIN();
