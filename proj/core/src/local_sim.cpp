#include "locsim/local_sim.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "locsim/error.hpp"

namespace locsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Vertex> bfs_order(const Graph& g, Vertex root) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  auto sweep = [&](Vertex s) {
    if (seen[s]) return;
    seen[s] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    for (; head < order.size(); ++head) {
      for (Vertex y : g.neighbors(order[head])) {
        if (!seen[y]) {
          seen[y] = 1;
          order.push_back(y);
        }
      }
    }
  };
  if (n == 0) return order;
  sweep(root);
  for (Vertex v = 0; v < n; ++v) sweep(v);
  return order;
}

}  // namespace

std::uint64_t id_space(std::size_t n, unsigned c_exponent) {
  if (c_exponent == 0) throw Error(ErrorCode::kInvalidArgument, "c_exponent must be >= 1");
  unsigned __int128 space = 1;
  for (unsigned i = 0; i < c_exponent; ++i) {
    space *= std::max<std::size_t>(n, 1);
    if (space > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "id space n^c overflows 64 bits for n=" + std::to_string(n) + ", c=" + std::to_string(c_exponent));
    }
  }
  return static_cast<std::uint64_t>(space);
}

std::uint64_t IdAssignment::space() const { return id_space(ids.size(), c_exponent); }

std::optional<IdStrategy> parse_id_strategy(const std::string& name) {
  if (name == "random" || name == "random_permutation") return IdStrategy::kRandomPermutation;
  if (name == "bfs" || name == "bfs_order") return IdStrategy::kBfsOrder;
  if (name == "reverse-bfs" || name == "reverse_bfs") return IdStrategy::kReverseBfs;
  if (name == "adversarial" || name == "adversarial_hook") return IdStrategy::kAdversarialHook;
  return std::nullopt;
}

std::string id_strategy_name(IdStrategy s) {
  switch (s) {
    case IdStrategy::kRandomPermutation: return "random";
    case IdStrategy::kBfsOrder: return "bfs";
    case IdStrategy::kReverseBfs: return "reverse-bfs";
    case IdStrategy::kAdversarialHook: return "adversarial";
  }
  return "unknown";
}

IdAssignment assign_ids(const Graph& g, const IdOptions& options, unsigned c_exponent) {
  const std::size_t n = g.vertex_count();
  IdAssignment out;
  out.c_exponent = c_exponent;
  const std::uint64_t space = id_space(n, c_exponent);
  out.ids.resize(n);
  switch (options.strategy) {
    case IdStrategy::kRandomPermutation: {
      // Uniform injective map into [0, n^c): a random n-subset in random order.
      std::mt19937_64 rng(options.seed);
      if (space == n) {
        std::iota(out.ids.begin(), out.ids.end(), std::uint64_t{0});
        std::shuffle(out.ids.begin(), out.ids.end(), rng);
      } else {
        // Draw all ids, then redraw every vertex that collides with a smaller
        // (id, vertex) pair until none do. The procedure commutes with any
        // relabeling of the id space, so the result is uniform over injective
        // maps.
        std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
        for (auto& id : out.ids) id = pick(rng);
        std::vector<std::pair<std::uint64_t, Vertex>> sorted(n);
        for (bool again = true; again;) {
          for (Vertex v = 0; v < n; ++v) sorted[v] = {out.ids[v], v};
          std::sort(sorted.begin(), sorted.end());
          again = false;
          for (std::size_t i = 1; i < n; ++i) {
            if (sorted[i].first != sorted[i - 1].first) continue;
            out.ids[sorted[i].second] = pick(rng);
            again = true;
          }
        }
      }
      break;
    }
    case IdStrategy::kBfsOrder:
    case IdStrategy::kReverseBfs: {
      if (n > 0 && options.root >= n) throw Error(ErrorCode::kInvalidArgument, "bfs root out of range");
      const auto order = bfs_order(g, options.root);
      for (std::size_t i = 0; i < order.size(); ++i) {
        out.ids[order[i]] = options.strategy == IdStrategy::kBfsOrder ? i : n - 1 - i;
      }
      break;
    }
    case IdStrategy::kAdversarialHook: {
      if (!options.hook) throw Error(ErrorCode::kInvalidArgument, "adversarial strategy needs a hook");
      out.ids = options.hook(g, space);
      if (out.ids.size() != n) throw Error(ErrorCode::kInvalidArgument, "hook returned wrong number of ids");
      std::vector<std::uint64_t> sorted = out.ids;
      std::sort(sorted.begin(), sorted.end());
      if ((!sorted.empty() && sorted.back() >= space) ||
          std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::kInvalidArgument, "hook ids must be injective and below n^c");
      }
      break;
    }
  }
  return out;
}

std::uint64_t RandomTape::word(Vertex v, std::uint64_t block) const {
  return splitmix64(splitmix64(seed_ ^ splitmix64(v + 0x632be59bd9b4e019ULL)) + block);
}

bool RandomTape::bit(Vertex v, std::uint64_t position) const {
  return (word(v, position / 64) >> (position % 64)) & 1U;
}

std::uint64_t RandomTape::prefix(Vertex v, unsigned count) const {
  if (count > 64) throw Error(ErrorCode::kInvalidArgument, "tape prefix longer than 64 bits");
  if (count == 0) return 0;
  const std::uint64_t w = word(v, 0);
  return count == 64 ? w : (w & ((std::uint64_t{1} << count) - 1));
}

std::vector<std::uint64_t> edge_ids(const Graph& g, const IdAssignment& ids) {
  const unsigned __int128 space = id_space(g.vertex_count(), ids.c_exponent);
  if (space * space > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "edge identifiers (n^c)^2 overflow 64 bits; lower c_exponent");
  }
  std::vector<std::uint64_t> out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto a = ids.ids[g.edge(e).u];
    auto b = ids.ids[g.edge(e).v];
    if (a > b) std::swap(a, b);
    out[e] = static_cast<std::uint64_t>(a * space + b);
  }
  return out;
}

namespace {

RunResult run_impl(const Graph& g, const LocalAlgorithm& alg, std::span<const std::uint64_t> labels,
                   const RandomTape* tape, EvalMode mode) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.vertex_count();
  const std::size_t t = alg.radius(n);

  Graph line;
  const Graph* host = &g;
  if (alg.target == Target::kEdge) {
    line = line_graph(g);
    host = &line;
  }

  std::vector<std::optional<std::uint64_t>> raw;
  const bool use_batch = mode == EvalMode::kBatch || (mode == EvalMode::kAuto && alg.batch);
  if (use_batch) {
    if (!alg.batch) throw Error(ErrorCode::kInvalidArgument, alg.name + " has no batch evaluator");
    raw = alg.batch(*host, labels, n, tape);
  } else {
    raw.resize(host->vertex_count());
    for (Vertex v = 0; v < host->vertex_count(); ++v) {
      raw[v] = alg.evaluate(ball(*host, v, t, labels), n, tape);
    }
  }

  RunResult result;
  result.rounds_used = t;
  result.outputs.resize(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (!raw[v]) {
      throw Error(ErrorCode::kAlgorithmUndefined,
                  alg.name + " produced no output at " + (alg.target == Target::kEdge ? "edge " : "vertex ") +
                      std::to_string(v));
    }
    result.outputs[v] = *raw[v];
  }
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace

RunResult run_deterministic(const Graph& g, const LocalAlgorithm& alg, const IdAssignment& ids, EvalMode mode) {
  if (ids.ids.size() != g.vertex_count()) throw Error(ErrorCode::kInvalidArgument, "id assignment size mismatch");
  if (alg.target == Target::kEdge) {
    const auto labels = edge_ids(g, ids);
    return run_impl(g, alg, labels, nullptr, mode);
  }
  return run_impl(g, alg, ids.ids, nullptr, mode);
}

RunResult run_randomized(const Graph& g, const LocalAlgorithm& alg, const RandomTape& tape, EvalMode mode) {
  return run_impl(g, alg, {}, &tape, mode);
}

VerifyReport verify_coloring(const Graph& g, std::span<const std::uint64_t> outputs, Target mode, std::uint64_t k) {
  VerifyReport report;
  const std::size_t expected = mode == Target::kVertex ? g.vertex_count() : g.edge_count();
  if (outputs.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument, "coloring has " + std::to_string(outputs.size()) + " entries, expected " +
                                                 std::to_string(expected));
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i] < 1 || outputs[i] > k) report.out_of_range.push_back(i);
  }
  if (mode == Target::kVertex) {
    for (const Edge& e : g.edges()) {
      if (outputs[e.u] == outputs[e.v]) report.conflicts.emplace_back(e.u, e.v);
    }
  } else {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      auto inc = g.incident_edges(v);
      for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = i + 1; j < inc.size(); ++j)
          if (outputs[inc[i]] == outputs[inc[j]])
            report.conflicts.emplace_back(std::min(inc[i], inc[j]), std::max(inc[i], inc[j]));
    }
  }
  std::vector<std::uint64_t> used(outputs.begin(), outputs.end());
  std::sort(used.begin(), used.end());
  report.palette_used = static_cast<std::size_t>(std::unique(used.begin(), used.end()) - used.begin());
  report.pass = report.conflicts.empty() && report.out_of_range.empty();
  return report;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["graph_file"] = graph_file;
  j["algorithm_name"] = algorithm_name;
  j["id_strategy"] = id_strategy;
  j["seed"] = seed;
  j["c_exponent"] = c_exponent;
  j["delta"] = delta;
  j["outputs"] = outputs;
  j["rounds_used"] = rounds_used;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.graph_file = j.at("graph_file").get<std::string>();
    m.algorithm_name = j.at("algorithm_name").get<std::string>();
    m.id_strategy = j.at("id_strategy").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.c_exponent = j.value("c_exponent", kDefaultCExponent);
    m.delta = j.value("delta", std::uint64_t{0});
    m.outputs = j.at("outputs").get<std::vector<std::uint64_t>>();
    m.rounds_used = j.at("rounds_used").get<std::size_t>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("run manifest: ") + e.what());
  }
}

LocalAlgorithm constant_algorithm(std::uint64_t label) {
  LocalAlgorithm a;
  a.name = "constant";
  a.radius = [](std::size_t) { return std::size_t{0}; };
  a.evaluate = [label](const RootedBall&, std::size_t, const RandomTape*) { return std::optional{label}; };
  return a;
}

LocalAlgorithm identity_algorithm() {
  LocalAlgorithm a;
  a.name = "identity";
  a.radius = [](std::size_t) { return std::size_t{0}; };
  a.evaluate = [](const RootedBall& b, std::size_t, const RandomTape*) -> std::optional<std::uint64_t> {
    if (b.labels.empty()) return std::nullopt;
    return b.labels[0];
  };
  return a;
}

LocalAlgorithm min_id_algorithm(std::size_t r) {
  LocalAlgorithm a;
  a.name = "min-id-" + std::to_string(r);
  a.radius = [r](std::size_t) { return r; };
  a.evaluate = [](const RootedBall& b, std::size_t, const RandomTape*) -> std::optional<std::uint64_t> {
    if (b.labels.empty()) return std::nullopt;
    return *std::min_element(b.labels.begin(), b.labels.end());
  };
  return a;
}

LocalAlgorithm first_tape_bit_algorithm() {
  LocalAlgorithm a;
  a.name = "first-tape-bit";
  a.radius = [](std::size_t) { return std::size_t{0}; };
  a.evaluate = [](const RootedBall& b, std::size_t, const RandomTape* tape) -> std::optional<std::uint64_t> {
    if (!tape) return std::nullopt;
    return tape->bit(b.origin[0], 0) ? 1 : 0;
  };
  return a;
}

LocalAlgorithm tape_id_algorithm(unsigned c_exponent) {
  LocalAlgorithm a;
  a.name = "tape-id";
  a.radius = [](std::size_t) { return std::size_t{0}; };
  a.evaluate = [c_exponent](const RootedBall& b, std::size_t n,
                            const RandomTape* tape) -> std::optional<std::uint64_t> {
    if (!tape) return std::nullopt;
    const auto bits = static_cast<unsigned>(std::bit_width(id_space(n, c_exponent)) - 1);
    return tape->prefix(b.origin[0], bits);
  };
  return a;
}

}  // namespace locsim
