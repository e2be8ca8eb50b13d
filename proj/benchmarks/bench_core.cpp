#include <benchmark/benchmark.h>

#include <cstdint>

#include "openrcd/bounds.hpp"
#include "openrcd/events.hpp"
#include "openrcd/experiment.hpp"

using namespace openrcd;

namespace {

const ClassParams kCls{1.0, 10.0};

AllocationState make_state(int n) {
  ReplacementDistribution dist(ReplacementMode::RR, kCls, 12345);
  std::vector<CostFunction> funcs;
  funcs.reserve(n);
  for (int i = 0; i < n; ++i) funcs.push_back(dist.sample());
  return AllocationState::selfish_start(std::move(funcs));
}

void BM_RcdUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AllocationState s = make_state(n);
  const RcdConfig cfg{StepRule::TwoBeta, kCls};
  Rng rng(7);
  for (auto _ : state) {
    const int i = static_cast<int>(rng.uniform_index(n));
    int j = static_cast<int>(rng.uniform_index(n - 1));
    if (j >= i) ++j;
    benchmark::DoNotOptimize(rcd_update(s, i, j, cfg));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RcdUpdate)->Arg(5)->Arg(50)->Arg(500);

void BM_OptimalPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AllocationState s = make_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_point(s));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OptimalPoint)->Arg(5)->Arg(50)->Arg(500);

void BM_TrajectoryEvents(benchmark::State& state) {
  // full event loop including replacements and their optimum refreshes
  EventStreamConfig cfg;
  cfg.n = 5;
  cfg.p = 1.0 / 1.0125;
  cfg.mode = ReplacementMode::RR;
  cfg.cls = kCls;
  cfg.seed = 99;
  const RcdConfig rcd{StepRule::TwoBeta, kCls};
  TrajectoryRunner runner(cfg, rcd);
  for (auto _ : state) {
    benchmark::DoNotOptimize(runner.step());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrajectoryEvents);

void BM_RegBoundFinite(benchmark::State& state) {
  const std::int64_t horizon = state.range(0);
  const BoundParams bp = BoundParams::make(5, 1.0, 10.0, 1.0 / 1.0125, 122.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_bound_finite(bp, horizon, bp.theta_general));
  }
}
BENCHMARK(BM_RegBoundFinite)->Arg(1000)->Arg(1000000);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
