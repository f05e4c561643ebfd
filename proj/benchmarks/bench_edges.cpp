#include <benchmark/benchmark.h>

#include "locsim/matching.hpp"
#include "locsim/vizing.hpp"

using namespace locsim;

namespace {

Graph regular(Family family, std::size_t n, std::size_t d) {
  FamilySpec s;
  s.family = family;
  s.n = n;
  s.degree = d;
  s.seed = 5;
  s.retry_budget = 100000;
  return gen_graph(s);
}

}  // namespace

static void BM_SequentialVizing(benchmark::State& state) {
  const Graph g = regular(Family::kRandomRegular, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(sequential_vizing(g).data());
}
BENCHMARK(BM_SequentialVizing)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_MultiStepColoring(benchmark::State& state) {
  const Graph g = regular(Family::kRandomRegular, static_cast<std::size_t>(state.range(0)), 4);
  std::size_t largest = 0;
  for (auto _ : state) {
    PartialEdgeColoring c(g);
    MultiStepOptions o;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto chain = multi_step_search(c, e, o);
      largest = std::max(largest, chain.size());
      augment_in_place(c, chain);
    }
  }
  state.counters["max_chain"] = static_cast<double>(largest);
}
BENCHMARK(BM_MultiStepColoring)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_StageDoubling(benchmark::State& state) {
  const Graph g = regular(Family::kRandomBipartiteRegular, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    Matching m = maximal_matching(g);
    for (std::size_t k = 2; !m.unmatched().empty(); k *= 2) m = stage_eliminate(g, m, k);
    benchmark::DoNotOptimize(m.size());
  }
}
BENCHMARK(BM_StageDoubling)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_RandomRegularGeneration(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(regular(Family::kRandomRegular, static_cast<std::size_t>(state.range(0)), 3));
  }
}
BENCHMARK(BM_RandomRegularGeneration)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
