#include <benchmark/benchmark.h>

#include "rearrange/arrangement.hpp"
#include "rearrange/baseline.hpp"
#include "rearrange/mcts.hpp"

namespace {

using namespace rearrange;

Instance random_instance(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_random_instance(n, GenerationParams{}, rng);
}

void BM_MctsRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Instance inst = random_instance(n, 11);
  SearchConfig cfg;
  std::uint64_t checks = 0;
  for (auto _ : state) {
    cfg.seed = state.iterations();
    const PlanResult r = mcts_plan(inst, cfg);
    checks += r.collision_checks;
    benchmark::DoNotOptimize(r.plan.data());
  }
  state.counters["checks/run"] =
      benchmark::Counter(static_cast<double>(checks), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_MctsRandom)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_MctsMonotone(benchmark::State& state) {
  Rng rng(5);
  const auto m = gen_monotone_instance(static_cast<std::size_t>(state.range(0)), {}, rng);
  SearchConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mcts_plan(m.instance, cfg).iterations);
}
BENCHMARK(BM_MctsMonotone)->Arg(15)->Unit(benchmark::kMicrosecond);

void BM_Baseline(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)), 11);
  BaselineConfig cfg;
  for (auto _ : state) {
    cfg.seed = state.iterations();
    benchmark::DoNotOptimize(baseline_plan(inst, cfg).plan.size());
  }
}
BENCHMARK(BM_Baseline)->Arg(10)->Arg(25)->Unit(benchmark::kMicrosecond);

void BM_SampleFreePosition(benchmark::State& state) {
  const Instance inst = random_instance(25, 3);
  Rng rng(1);
  CollisionCounter ctr;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_free_position(Obstacles(inst.initial), inst.radius,
                                                  inst.workspace, rng, 100, ctr));
  }
}
BENCHMARK(BM_SampleFreePosition);

}  // namespace

BENCHMARK_MAIN();
