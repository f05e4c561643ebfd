#include <benchmark/benchmark.h>

#include "locsim/games.hpp"

using namespace locsim;

static void BM_GlocalSearch(benchmark::State& state) {
  FamilySpec s;
  s.family = Family::kComplete;
  s.n = static_cast<std::size_t>(state.range(0));
  const Graph h = gen_graph(s);
  for (auto _ : state) benchmark::DoNotOptimize(glocal_exists(h, 3, 1));
}
BENCHMARK(BM_GlocalSearch)->DenseRange(3, 5);

static void BM_SolveGameTwoRounds(benchmark::State& state) {
  FamilySpec s;
  s.family = Family::kCycle;
  s.n = 5;
  GameSpec spec;
  spec.target = EdgeLabeledGraph{gen_graph(s), {}, 0};
  spec.delta = 3;
  spec.rounds = 2;
  spec.alg = GlocalAlgorithm::zero_round({1, 2, 1, 2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(solve_game(spec).who);
}
BENCHMARK(BM_SolveGameTwoRounds);

static void BM_IdGraphSearch(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(id_graph_search(n, 2, 2, 2, 1, 50));
}
BENCHMARK(BM_IdGraphSearch)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
