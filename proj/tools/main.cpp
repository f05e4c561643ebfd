// locsim command-line front end. Exit codes: 0 success, 1 verification or
// runtime failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "bench.hpp"
#include "locsim/brooks.hpp"
#include "locsim/error.hpp"
#include "locsim/games.hpp"
#include "locsim/graph.hpp"
#include "locsim/local_sim.hpp"
#include "locsim/matching.hpp"
#include "locsim/vertex_coloring.hpp"
#include "locsim/vizing.hpp"

using namespace locsim;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GraphFlags {
  std::string graph_file;
  std::string family;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  bool wrap = false;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t retries = 1000;

  void attach(CLI::App* app, bool allow_file) {
    if (allow_file) app->add_option("--graph", graph_file, "graph file in the text format");
    app->add_option("--family", family, "generator family (cycle, path, grid, complete, random_regular, ...)");
    app->add_option("--n", n, "vertex count (leaves for star, rungs for circular_ladder)");
    app->add_option("--d", d, "degree for random families and tree branching");
    app->add_option("--width", width, "grid width");
    app->add_option("--height", height, "grid height");
    app->add_flag("--wrap", wrap, "grid wraps into a torus");
    app->add_option("--depth", depth, "tree depth");
    app->add_option("--seed", seed, "seed for every randomized step");
    app->add_option("--retries", retries, "retry budget for random generators");
  }

  EdgeLabeledGraph load() const {
    if (!graph_file.empty()) return read_graph_file(graph_file);
    if (family.empty()) throw UsageError("give --graph or --family");
    const auto fam = parse_family(family);
    if (!fam) throw UsageError("unknown family " + family);
    FamilySpec s;
    s.family = *fam;
    s.n = n;
    s.degree = d;
    s.width = width;
    s.height = height == 0 ? width : height;
    s.wrap = wrap;
    s.depth = depth;
    s.seed = seed;
    s.retry_budget = retries;
    return EdgeLabeledGraph{gen_graph(s), {}, 0};
  }
};

std::vector<std::uint64_t> read_vertex_colors(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::uint64_t> out;
  std::uint64_t c = 0;
  while (in >> c) out.push_back(c);
  return out;
}

std::vector<std::uint64_t> read_edge_colors(const Graph& g, const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::uint64_t> out(g.edge_count(), 0);
  Vertex u = 0, v = 0;
  std::uint64_t c = 0;
  while (in >> u >> v >> c) {
    if (u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v)) {
      throw UsageError("coloring names a non-edge " + std::to_string(u) + " " + std::to_string(v));
    }
    out[g.edge_id(u, v)] = c;
  }
  return out;
}

void print_violations(const Graph& g, const VerifyReport& r, Target mode) {
  std::cout << "FAIL palette_used=" << r.palette_used << '\n';
  for (const auto& [a, b] : r.conflicts) {
    if (mode == Target::kVertex) {
      std::cout << "conflict vertices " << a << ' ' << b << '\n';
    } else {
      std::cout << "conflict edges " << g.edge(static_cast<EdgeId>(a)).u << '-' << g.edge(static_cast<EdgeId>(a)).v
                << ' ' << g.edge(static_cast<EdgeId>(b)).u << '-' << g.edge(static_cast<EdgeId>(b)).v << '\n';
    }
  }
  for (std::uint64_t x : r.out_of_range) std::cout << "out_of_range " << x << '\n';
}

LocalAlgorithm algorithm_by_name(const std::string& name, std::size_t delta, unsigned c_exponent) {
  if (name == "greedy-vertex") return distributed_greedy(Target::kVertex, delta, c_exponent);
  if (name == "greedy-edge") return distributed_greedy(Target::kEdge, delta, c_exponent);
  if (name == "identity") return identity_algorithm();
  if (name == "min-id") return min_id_algorithm(1);
  throw UsageError("unknown algorithm " + name + " (greedy-vertex, greedy-edge, identity, min-id)");
}

RunManifest execute(const RunManifest& plan) {
  const auto h = read_graph_file(plan.graph_file);
  const auto strategy = parse_id_strategy(plan.id_strategy);
  if (!strategy) throw UsageError("unknown id strategy " + plan.id_strategy);
  IdOptions o;
  o.strategy = *strategy;
  o.seed = plan.seed;
  RunManifest m = plan;
  if (m.delta == 0) m.delta = h.graph.max_degree();
  const auto alg = algorithm_by_name(m.algorithm_name, m.delta, m.c_exponent);
  const auto run = run_deterministic(h.graph, alg, assign_ids(h.graph, o, m.c_exponent));
  m.outputs = run.outputs;
  m.rounds_used = run.rounds_used;
  return m;
}

GrowthBound growth_by_name(const std::string& name, const Graph& g) {
  if (name == "torus") return GrowthBound::closed_form([](std::size_t r) { return 2.0 * r * r + 2.0 * r + 2.0; }, name);
  if (name == "ladder") return GrowthBound::closed_form([](std::size_t r) { return 4.0 * r + 4.0; }, name);
  if (name == "measured") {
    // One more than the largest ball of each radius, up to radius 32.
    std::vector<double> table(33, 1.0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto dist = bfs_distances(g, v, 32);
      std::vector<double> count(33, 0.0);
      for (auto x : dist)
        if (x <= 32) count[x] += 1;
      double acc = 0;
      for (std::size_t r = 0; r <= 32; ++r) {
        acc += count[r];
        table[r] = std::max(table[r], acc + 1);
      }
    }
    return GrowthBound::tabulated(table, name);
  }
  throw UsageError("unknown growth bound " + name + " (torus, ladder, measured)");
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<std::size_t>(std::stod(item)));
    } catch (const std::exception&) {
      throw UsageError("bad list entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LOCAL-model coloring, matching and game experiments"};
  app.require_subcommand(1);
  int status = 0;

  // generate
  GraphFlags gen_flags;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "generate a graph from a family");
  gen_flags.attach(generate, false);
  generate->add_option("--out", gen_out, "output file (stdout when omitted)");
  generate->callback([&] {
    const auto h = gen_flags.load();
    Sink sink(gen_out);
    write_graph(sink.stream(), h.graph);
  });

  // run
  std::string run_alg = "greedy-vertex", run_graph, run_ids = "random", run_out, run_manifest;
  std::uint64_t run_seed = 0, run_delta = 0;
  unsigned run_c = kDefaultCExponent;
  auto* run = app.add_subcommand("run", "run a deterministic LOCAL algorithm and write a manifest");
  run->add_option("--alg", run_alg, "greedy-vertex, greedy-edge, identity or min-id");
  run->add_option("--graph", run_graph, "graph file");
  run->add_option("--ids", run_ids, "id strategy")->check(CLI::IsMember({"random", "bfs", "reverse-bfs"}));
  run->add_option("--seed", run_seed, "id seed");
  run->add_option("--delta", run_delta, "declared maximum degree (graph maximum when 0)");
  run->add_option("--c-exponent", run_c, "id space exponent c (ids in 1..n^c)");
  run->add_option("--manifest", run_manifest, "rerun the plan recorded in a manifest");
  run->add_option("--out", run_out, "manifest output (stdout when omitted)");
  run->callback([&] {
    RunManifest plan;
    if (!run_manifest.empty()) {
      plan = RunManifest::from_json(slurp(run_manifest));
    } else {
      if (run_graph.empty()) throw UsageError("run needs --graph or --manifest");
      plan.graph_file = run_graph;
      plan.algorithm_name = run_alg;
      plan.id_strategy = run_ids;
      plan.seed = run_seed;
      plan.c_exponent = run_c;
      plan.delta = run_delta;
    }
    const auto m = execute(plan);
    Sink sink(run_out);
    sink.stream() << m.to_json();
  });

  // verify
  std::string ver_mode = "vertex", ver_graph, ver_run, ver_coloring;
  std::uint64_t ver_k = 0;
  auto* verify = app.add_subcommand("verify", "check a coloring; exit 1 with the violations when improper");
  verify->add_option("--mode", ver_mode, "vertex or edge")->check(CLI::IsMember({"vertex", "edge"}));
  verify->add_option("--k", ver_k, "palette bound")->required();
  verify->add_option("--graph", ver_graph, "graph file (defaults to the manifest's)");
  verify->add_option("--run", ver_run, "run manifest holding the outputs");
  verify->add_option("--coloring", ver_coloring,
                     "coloring file: one color per vertex, or 'u v color' lines in edge mode");
  verify->callback([&] {
    if (ver_run.empty() == ver_coloring.empty()) throw UsageError("give exactly one of --run and --coloring");
    const Target mode = ver_mode == "edge" ? Target::kEdge : Target::kVertex;
    std::vector<std::uint64_t> colors;
    std::string graph_file = ver_graph;
    if (!ver_run.empty()) {
      const auto m = RunManifest::from_json(slurp(ver_run));
      colors = m.outputs;
      if (graph_file.empty()) graph_file = m.graph_file;
    }
    if (graph_file.empty()) throw UsageError("verify needs --graph");
    const auto h = read_graph_file(graph_file);
    if (!ver_coloring.empty()) {
      colors = mode == Target::kVertex ? read_vertex_colors(ver_coloring) : read_edge_colors(h.graph, ver_coloring);
    }
    const std::size_t expected = mode == Target::kVertex ? h.graph.vertex_count() : h.graph.edge_count();
    if (colors.size() != expected) {
      throw UsageError("coloring has " + std::to_string(colors.size()) + " entries, expected " +
                       std::to_string(expected));
    }
    const auto report = verify_coloring(h.graph, colors, mode, ver_k);
    if (!report.pass) {
      print_violations(h.graph, report, mode);
      status = kVerifyFailed;
      return;
    }
    std::cout << "PASS palette_used=" << report.palette_used << '\n';
  });

  // bench
  tools::BenchConfig bench_cfg;
  std::string bench_sizes, bench_seeds = "0", bench_format = "csv", bench_out;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite and emit a CSV or JSON table");
  bench->add_option("--suite", bench_cfg.suite, "suite name")->required()->check(CLI::IsMember(tools::suite_names()));
  bench->add_option("--sizes", bench_sizes, "comma-separated sizes (may be empty)");
  bench->add_option("--seeds", bench_seeds, "comma-separated seeds");
  bench->add_option("--d", bench_cfg.degree, "degree (suite default when 0)");
  bench->add_option("--C", bench_cfg.C, "Brooks constant C");
  bench->add_option("--c-exponent", bench_cfg.c_exponent, "id space exponent");
  bench->add_option("--ids", bench_cfg.ids, "id strategy")->check(CLI::IsMember({"random", "bfs", "reverse-bfs"}));
  bench->add_option("--steps", bench_cfg.steps, "multi-step budget");
  bench->add_option("--trunc", bench_cfg.trunc, "truncation length (default when 0)");
  bench->add_option("--retries", bench_cfg.retries, "retry budget for random generators");
  bench->add_option("--format", bench_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", bench_out, "output file");
  bench->callback([&] {
    bench_cfg.sizes = parse_list(bench_sizes);
    for (std::size_t s : parse_list(bench_seeds)) bench_cfg.seeds.push_back(s);
    const auto rows = tools::run_bench(bench_cfg);
    Sink sink(bench_out);
    if (bench_format == "json") tools::write_json(sink.stream(), rows);
    else tools::write_csv(sink.stream(), rows);
    for (const auto& r : rows)
      if (!r.verified) status = kVerifyFailed;
  });

  // vizing
  GraphFlags viz_flags;
  std::string viz_mode = "sequential", viz_out, viz_trace;
  std::size_t viz_steps = 64, viz_trunc = 0;
  auto* vizing = app.add_subcommand("vizing", "edge-color with Vizing chains");
  viz_flags.attach(vizing, true);
  vizing->add_option("--mode", viz_mode, "sequential or multistep")->check(CLI::IsMember({"sequential", "multistep"}));
  vizing->add_option("--steps", viz_steps, "multi-step budget");
  vizing->add_option("--trunc", viz_trunc, "truncation length (default when 0)");
  vizing->add_option("--trace", viz_trace, "write every multi-step chain to this file");
  vizing->add_option("--out", viz_out, "'u v color' output");
  vizing->callback([&] {
    const auto h = viz_flags.load();
    std::vector<std::uint64_t> colors;
    if (viz_mode == "sequential") {
      colors = sequential_vizing(h.graph);
    } else {
      PartialEdgeColoring state(h.graph);
      MultiStepOptions o;
      o.max_steps = viz_steps;
      o.trunc_len = viz_trunc;
      o.seed = viz_flags.seed;
      std::ofstream trace;
      if (!viz_trace.empty()) trace.open(viz_trace);
      for (EdgeId e = 0; e < h.graph.edge_count(); ++e) {
        const auto chain = multi_step_search(state, e, o);
        if (trace) write_chain_trace(trace, h.graph, chain);
        augment_in_place(state, chain);
      }
      colors = state.colors();
    }
    const auto report = verify_coloring(h.graph, colors, Target::kEdge, h.graph.max_degree() + 1);
    Sink sink(viz_out);
    write_edge_coloring(sink.stream(), h.graph, colors);
    if (!report.pass) {
      print_violations(h.graph, report, Target::kEdge);
      status = kVerifyFailed;
    }
  });

  // brooks
  GraphFlags brooks_flags;
  std::string brooks_growth = "measured", brooks_ids = "random", brooks_out;
  double brooks_C = 1.0;
  std::size_t brooks_R = 0, brooks_delta = 0;
  auto* brooks = app.add_subcommand("brooks", "Delta-color with the subexponential-growth Brooks algorithm");
  brooks_flags.attach(brooks, true);
  brooks->add_option("--growth", brooks_growth, "torus, ladder or measured");
  brooks->add_option("--C", brooks_C, "constant C of the growth condition");
  brooks->add_option("--R", brooks_R, "override the chosen radius (0 keeps it)");
  brooks->add_option("--delta", brooks_delta, "palette size (graph maximum degree when 0)");
  brooks->add_option("--ids", brooks_ids, "id strategy")->check(CLI::IsMember({"random", "bfs", "reverse-bfs"}));
  brooks->add_option("--out", brooks_out, "JSON report");
  brooks->callback([&] {
    const auto h = brooks_flags.load();
    BrooksOptions o;
    o.delta = brooks_delta;
    o.ids.strategy = *parse_id_strategy(brooks_ids);
    o.ids.seed = brooks_flags.seed;
    if (brooks_R != 0) o.radius = brooks_R;
    const auto result = subexp_brooks(h.graph, growth_by_name(brooks_growth, h.graph), brooks_C, o);
    const auto report = verify_coloring(h.graph, result.colors, Target::kVertex, result.delta);
    bool disjoint = true;
    for (const auto& rec : result.log) disjoint = disjoint && rec.disjoint;
    nlohmann::json j{{"R", result.R},
                     {"epsilon", result.epsilon},
                     {"delta", result.delta},
                     {"sweeps", result.sweeps.str()},
                     {"total_rounds", result.total_rounds.str()},
                     {"patches_disjoint", disjoint},
                     {"verified", report.pass},
                     {"colors", result.colors}};
    Sink sink(brooks_out);
    sink.stream() << j.dump(2) << '\n';
    if (!report.pass || !disjoint) status = kVerifyFailed;
  });

  // match
  GraphFlags match_flags;
  std::size_t match_k = 0;
  std::string match_out;
  auto* match = app.add_subcommand("match", "eliminate short augmenting paths (one stage, or doubling k)");
  match_flags.attach(match, true);
  match->add_option("--k", match_k, "single stage bound; doubling from 2 until perfect when 0");
  match->add_option("--out", match_out, "'u v' lines");
  match->callback([&] {
    const auto h = match_flags.load();
    const Graph& g = h.graph;
    Matching m = maximal_matching(g);
    std::size_t k = match_k == 0 ? 2 : match_k;
    std::vector<StageLog> logs;
    while (true) {
      StageLog log;
      m = stage_eliminate(g, m, k, &log);
      logs.push_back(log);
      if (match_k != 0 || m.unmatched().empty() || k > 2 * g.vertex_count()) break;
      k *= 2;
    }
    Sink sink(match_out);
    write_matching(sink.stream(), m);
    for (const auto& l : logs)
      std::cerr << "stage k=" << l.k << " flips=" << l.flips << " unmatched=" << l.unmatched << '\n';
    if (find_aug_path(g, m, k)) status = kVerifyFailed;
  });

  // game
  GraphFlags game_flags;
  std::size_t game_delta = 3, game_rounds = 0;
  std::string game_alg = "glocal", game_variant = "plain", game_out;
  std::uint64_t game_color = 1;
  auto* game = app.add_subcommand("game", "solve every G(v,i) on a target graph H and extract a coloring");
  game_flags.attach(game, true);
  game->add_option("--delta", game_delta, "tree degree");
  game->add_option("--rounds", game_rounds, "rounds r");
  game->add_option("--alg", game_alg, "glocal (searched), greedy (0-round from a greedy coloring) or constant")
      ->check(CLI::IsMember({"glocal", "greedy", "constant"}));
  game->add_option("--color", game_color, "output of the constant algorithm");
  game->add_option("--variant", game_variant, "plain or edge_labeled")->check(CLI::IsMember({"plain", "edge_labeled"}));
  game->add_option("--out", game_out, "JSON report");
  game->callback([&] {
    const auto h = game_flags.load();
    const auto variant = game_variant == "plain" ? GameVariant::kPlain : GameVariant::kEdgeLabeled;
    Sink sink(game_out);
    GlocalAlgorithm alg;
    if (game_alg == "glocal") {
      if (variant != GameVariant::kPlain) throw UsageError("--alg glocal supports the plain variant only");
      const auto found = glocal_search(h.graph, game_delta, game_rounds);
      if (!found) {
        sink.stream() << nlohmann::json{{"glocal_exists", false}}.dump() << '\n';
        return;
      }
      alg = *found;
    } else if (game_alg == "greedy") {
      std::vector<Vertex> order(h.graph.vertex_count());
      for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
      alg = GlocalAlgorithm::zero_round(sequential_greedy(h.graph, order));
    } else {
      alg = GlocalAlgorithm::constant(game_color);
    }
    write_game_report(sink.stream(), game_report(h, game_delta, game_rounds, alg, variant));
  });

  // idgraph
  std::size_t id_n = 0, id_delta = 2, id_d = 2, id_girth = 2, id_retries = 100;
  std::uint64_t id_seed = 0;
  std::string id_out;
  auto* idgraph = app.add_subcommand("idgraph", "search for an ID graph with large girth and chi_el > delta");
  idgraph->add_option("--n", id_n, "vertex count")->required();
  idgraph->add_option("--delta", id_delta, "number of labels");
  idgraph->add_option("--d", id_d, "degree of each labeled part");
  idgraph->add_option("--girth-min", id_girth, "required girth is above this");
  idgraph->add_option("--seed", id_seed, "seed");
  idgraph->add_option("--retries", id_retries, "attempts");
  idgraph->add_option("--out", id_out, "certificate output");
  idgraph->callback([&] {
    const auto cert = id_graph_search(id_n, id_delta, id_d, id_girth, id_seed, id_retries);
    Sink sink(id_out);
    if (!cert) {
      sink.stream() << "none\n";
      return;
    }
    write_certificate(sink.stream(), *cert);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kParse:
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kInfeasibleSpec:
        return kUsage;
      default:
        return kVerifyFailed;
    }
  }
  return status;
}
