#include <benchmark/benchmark.h>

#include "locsim/brooks.hpp"
#include "locsim/local_sim.hpp"
#include "locsim/vertex_coloring.hpp"

using namespace locsim;

namespace {

Graph cycle(std::size_t n) {
  FamilySpec s;
  s.family = Family::kCycle;
  s.n = n;
  return gen_graph(s);
}

Graph torus(std::size_t side) {
  FamilySpec s;
  s.family = Family::kGrid;
  s.width = s.height = side;
  s.wrap = true;
  return gen_graph(s);
}

}  // namespace

static void BM_CvSchedule(benchmark::State& state) {
  const BigCount start = BigCount(1) << 65536;
  for (auto _ : state) benchmark::DoNotOptimize(cv_schedule(start, 2));
}
BENCHMARK(BM_CvSchedule);

static void BM_DistributedGreedyCycle(benchmark::State& state) {
  const Graph g = cycle(static_cast<std::size_t>(state.range(0)));
  IdOptions o;
  o.seed = 1;
  const auto ids = assign_ids(g, o);
  const auto alg = distributed_greedy(Target::kVertex, 2);
  for (auto _ : state) {
    auto run = run_deterministic(g, alg, ids);
    state.counters["rounds"] = static_cast<double>(run.rounds_used);
    benchmark::DoNotOptimize(run.outputs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DistributedGreedyCycle)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

static void BM_SubexpBrooksTorus(benchmark::State& state) {
  const Graph g = torus(static_cast<std::size_t>(state.range(0)));
  const auto f = GrowthBound::closed_form([](std::size_t r) { return 2.0 * r * r + 2.0 * r + 2.0; });
  BrooksOptions o;
  o.delta = 4;
  for (auto _ : state) benchmark::DoNotOptimize(subexp_brooks(g, f, 1.0, o).colors.data());
}
BENCHMARK(BM_SubexpBrooksTorus)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_SequentialBrooks(benchmark::State& state) {
  const Graph g = torus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sequential_brooks(g).data());
}
BENCHMARK(BM_SequentialBrooks)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
