#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "locsim/brooks.hpp"
#include "locsim/error.hpp"
#include "locsim/local_sim.hpp"
#include "locsim/matching.hpp"
#include "locsim/vertex_coloring.hpp"
#include "locsim/vizing.hpp"

namespace locsim::tools {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t distinct(const std::vector<std::uint64_t>& colors) {
  return std::set<std::uint64_t>(colors.begin(), colors.end()).size();
}

Graph regular_or_cycle(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t retries) {
  FamilySpec s;
  s.n = n;
  s.seed = seed;
  s.retry_budget = retries;
  if (d == 2) {
    s.family = Family::kCycle;
  } else {
    s.family = Family::kRandomRegular;
    s.degree = d;
  }
  return gen_graph(s);
}

BenchRow greedy_logstar(const BenchConfig& c, std::size_t n, std::uint64_t seed) {
  const std::size_t d = c.degree == 0 ? 2 : c.degree;
  const Graph g = regular_or_cycle(n, d, seed, c.retries);
  IdOptions o;
  o.strategy = *parse_id_strategy(c.ids);
  o.seed = seed;
  const auto ids = assign_ids(g, o, c.c_exponent);
  const auto run = run_deterministic(g, distributed_greedy(Target::kVertex, d, c.c_exponent), ids);
  const auto report = verify_coloring(g, run.outputs, Target::kVertex, d + 1);
  return {n, seed, std::to_string(run.rounds_used), report.palette_used, 0, report.pass};
}

BenchRow brooks_subexp(const BenchConfig& c, std::size_t n, std::uint64_t seed) {
  const auto side = std::max<std::size_t>(3, static_cast<std::size_t>(std::lround(std::sqrt(double(n)))));
  FamilySpec s;
  s.family = Family::kGrid;
  s.width = s.height = side;
  s.wrap = true;
  const Graph g = gen_graph(s);
  const auto f = GrowthBound::closed_form([](std::size_t r) { return 2.0 * r * r + 2.0 * r + 2.0; }, "torus");
  BrooksOptions o;
  o.delta = 4;
  o.ids.strategy = *parse_id_strategy(c.ids);
  o.ids.seed = seed;
  o.c_exponent = c.c_exponent;
  const auto result = subexp_brooks(g, f, c.C, o);
  bool ok = verify_coloring(g, result.colors, Target::kVertex, 4).pass;
  for (const auto& rec : result.log) ok = ok && rec.disjoint && rec.proper_after;
  return {g.vertex_count(), seed, result.total_rounds.str(), distinct(result.colors), 0, ok};
}

BenchRow vizing_chains(const BenchConfig& c, std::size_t n, std::uint64_t seed) {
  const std::size_t d = c.degree == 0 ? 4 : c.degree;
  const Graph g = regular_or_cycle(n, d, seed, c.retries);
  PartialEdgeColoring state(g);
  MultiStepOptions o;
  o.max_steps = c.steps;
  o.trunc_len = c.trunc;
  o.seed = seed;
  std::size_t largest = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto chain = multi_step_search(state, e, o);
    largest = std::max(largest, chain.size());
    augment_in_place(state, chain);
  }
  const bool ok = state.is_proper() && state.colored_count() == g.edge_count();
  return {n, seed, std::to_string(largest), distinct(state.colors()), 0, ok};
}

BenchRow matching_stages(const BenchConfig& c, std::size_t n, std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::kRandomBipartiteRegular;
  s.n = n;
  s.degree = c.degree == 0 ? 3 : c.degree;
  s.seed = seed;
  s.retry_budget = c.retries;
  const Graph g = gen_graph(s);
  Matching m = maximal_matching(g);
  std::size_t k = 2;
  std::size_t stages = 0;
  while (!m.unmatched().empty() && k <= 2 * n) {
    m = stage_eliminate(g, m, k);
    ++stages;
    k *= 2;
  }
  const bool ok = m.unmatched().empty() && !find_aug_path(g, m, k).has_value();
  return {n, seed, std::to_string(stages), m.size(), 0, ok};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"greedy_logstar", "brooks_subexp", "vizing_chains",
                                              "matching_stages"};
  return names;
}

bool known_suite(const std::string& name) {
  const auto& s = suite_names();
  return std::find(s.begin(), s.end(), name) != s.end();
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (!known_suite(config.suite)) throw Error(ErrorCode::kInvalidArgument, "unknown suite " + config.suite);
  if (!parse_id_strategy(config.ids)) throw Error(ErrorCode::kInvalidArgument, "unknown id strategy " + config.ids);
  auto one = [&](std::size_t n, std::uint64_t seed) {
    const auto start = Clock::now();
    BenchRow row;
    if (config.suite == "greedy_logstar") row = greedy_logstar(config, n, seed);
    else if (config.suite == "brooks_subexp") row = brooks_subexp(config, n, seed);
    else if (config.suite == "vizing_chains") row = vizing_chains(config, n, seed);
    else row = matching_stages(config, n, seed);
    row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return row;
  };

  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t n : config.sizes)
    for (std::uint64_t s : config.seeds) jobs.emplace_back(n, s);
  std::sort(jobs.begin(), jobs.end());
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        try {
          rows[i] = one(jobs[i].first, jobs[i].second);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,seed,rounds,palette,wall_ms,verified\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.seed << ',' << r.rounds << ',' << r.palette << ',' << r.wall_ms << ','
        << (r.verified ? "true" : "false") << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<BenchRow>& rows) {
  auto j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"seed", r.seed},
                 {"rounds", r.rounds},
                 {"palette", r.palette},
                 {"wall_ms", r.wall_ms},
                 {"verified", r.verified}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace locsim::tools
