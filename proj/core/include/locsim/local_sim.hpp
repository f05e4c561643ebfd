#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locsim/graph.hpp"

namespace locsim {

/// Injective identifiers ids[v] < n^c_exponent.
struct IdAssignment {
  std::vector<std::uint64_t> ids;
  unsigned c_exponent = 3;

  /// n^c_exponent, the exclusive upper bound on identifiers.
  std::uint64_t space() const;
};

enum class IdStrategy { kRandomPermutation, kBfsOrder, kReverseBfs, kAdversarialHook };

std::optional<IdStrategy> parse_id_strategy(const std::string& name);
std::string id_strategy_name(IdStrategy s);

struct IdOptions {
  IdStrategy strategy = IdStrategy::kRandomPermutation;
  std::uint64_t seed = 0;
  Vertex root = 0;
  /// Used by kAdversarialHook: receives the graph and the id space n^c.
  std::function<std::vector<std::uint64_t>(const Graph&, std::uint64_t)> hook;
};

inline constexpr unsigned kDefaultCExponent = 3;

/// n^c, or throws kInvalidArgument when it does not fit in 64 bits.
std::uint64_t id_space(std::size_t n, unsigned c_exponent);

IdAssignment assign_ids(const Graph& g, const IdOptions& options, unsigned c_exponent = kDefaultCExponent);

/// Per-vertex lazily extended random bit streams. Bits are a pure function of
/// (seed, vertex, position), so any prefix can be reread.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  bool bit(Vertex v, std::uint64_t position) const;
  /// The first `count` bits of v's stream packed little-endian, count <= 64.
  std::uint64_t prefix(Vertex v, unsigned count) const;

 private:
  std::uint64_t word(Vertex v, std::uint64_t block) const;
  std::uint64_t seed_;
};

enum class Target { kVertex, kEdge };

/// A LOCAL algorithm given as a function of the labeled radius-t ball.
///
/// Vertex-target algorithms see balls of the input graph labeled by IDs (or
/// unlabeled with access to the tape in randomized runs). Edge-target
/// algorithms run on the line graph; their balls are line-graph balls.
struct LocalAlgorithm {
  using Evaluate =
      std::function<std::optional<std::uint64_t>(const RootedBall&, std::size_t n, const RandomTape*)>;
  using Batch = std::function<std::vector<std::optional<std::uint64_t>>(
      const Graph&, std::span<const std::uint64_t> labels, std::size_t n, const RandomTape*)>;

  std::string name;
  Target target = Target::kVertex;
  std::function<std::size_t(std::size_t n)> radius;
  Evaluate evaluate;
  /// Optional round-synchronous whole-graph evaluator. Must agree with
  /// evaluate() on every ball; used for instances where per-vertex ball
  /// extraction is too slow.
  Batch batch;
};

struct RunResult {
  std::vector<std::uint64_t> outputs;
  std::size_t rounds_used = 0;
  std::chrono::nanoseconds wall_time{0};
};

enum class EvalMode { kAuto, kBalls, kBatch };

/// Labels seen by an edge-target algorithm: for edge {u, v} with ids a < b the
/// label is a * space + b where space = n^c. Throws when that overflows.
std::vector<std::uint64_t> edge_ids(const Graph& g, const IdAssignment& ids);

/// outputs[v] = alg.evaluate(ball(g, v, t_n) labeled by ids, n). Throws
/// kAlgorithmUndefined if some ball gets no output.
RunResult run_deterministic(const Graph& g, const LocalAlgorithm& alg, const IdAssignment& ids,
                            EvalMode mode = EvalMode::kAuto);

RunResult run_randomized(const Graph& g, const LocalAlgorithm& alg, const RandomTape& tape,
                         EvalMode mode = EvalMode::kAuto);

struct VerifyReport {
  bool pass = true;
  /// Vertex mode: violating edges (u, v). Edge mode: adjacent edge-id pairs.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> conflicts;
  /// Indices whose label is outside 1..k.
  std::vector<std::uint64_t> out_of_range;
  std::size_t palette_used = 0;
};

VerifyReport verify_coloring(const Graph& g, std::span<const std::uint64_t> outputs, Target mode,
                             std::uint64_t k);

/// {graph_file, algorithm_name, id_strategy, seed, outputs, rounds_used}
struct RunManifest {
  std::string graph_file;
  std::string algorithm_name;
  std::string id_strategy;
  std::uint64_t seed = 0;
  unsigned c_exponent = kDefaultCExponent;
  std::uint64_t delta = 0;
  std::vector<std::uint64_t> outputs;
  std::size_t rounds_used = 0;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

// Small packaged algorithms used by the simulator tests and the CLI.
LocalAlgorithm constant_algorithm(std::uint64_t label);
LocalAlgorithm identity_algorithm();
/// Smallest ID within distance r.
LocalAlgorithm min_id_algorithm(std::size_t r);
/// First tape bit of the root.
LocalAlgorithm first_tape_bit_algorithm();
/// floor(log2(n^c)) tape bits of the root read as an identifier.
LocalAlgorithm tape_id_algorithm(unsigned c_exponent = kDefaultCExponent);

}  // namespace locsim
