#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "locsim/graph.hpp"
#include "locsim/local_sim.hpp"

namespace locsim {

/// Palette sizes can be astronomically large before the first reduction
/// step (k = 2^65536 in the classic example).
using BigCount = boost::multiprecision::cpp_int;

/// Colors are 1-based; 0 marks an uncolored vertex.
inline constexpr std::uint64_t kUncolored = 0;

struct PartialVertexColoring {
  std::vector<std::uint64_t> colors;  // kUncolored when outside the domain
  std::uint64_t palette_size = 0;

  std::vector<Vertex> uncolored() const;
  bool is_proper_on_domain(const Graph& g) const;
};

/// Number of base-2 logarithms needed to bring n down to at most 2.
std::size_t log_star(std::uint64_t n);

/// Smallest L with 2^L >= k.
std::size_t ceil_log2(const BigCount& k);

/// (2 * ceil(log2 k))^delta.
BigCount cv_bound(const BigCount& k, std::size_t delta);

/// Palettes visited by iterated reduction: front() is k, back() is the fixed
/// point (first palette p with cv_bound(p, delta) >= p).
std::vector<BigCount> cv_schedule(const BigCount& k, std::size_t delta);

/// One Cole–Vishkin round on a proper coloring with colors in 1..k.
///
/// Each vertex collects, for every neighbor (ordered by neighbor color), the
/// pair (lowest bit position where the two colors differ, own bit there) and
/// reads the Δ-long pair string as a number in 1..cv_bound(k, delta). Short
/// strings repeat their first pair; isolated vertices get color 1.
/// Throws kImproperInput on an improper or out-of-range input.
std::vector<std::uint64_t> cv_step(const Graph& g, std::span<const std::uint64_t> colors, std::uint64_t k,
                                   std::size_t delta);

struct Reduction {
  std::vector<std::uint64_t> colors;
  std::uint64_t palette = 0;
  std::size_t iterations = 0;
};

/// Iterates cv_step along cv_schedule(k, delta).
Reduction reduce_to_constant(const Graph& g, std::span<const std::uint64_t> colors, std::uint64_t k,
                             std::size_t delta);

/// Sweeps classes 1..classes; every vertex of class j takes the least color in
/// 1..delta+1 not used by its neighbors from earlier classes. Uses `classes`
/// rounds. Throws kImproperInput when the class coloring is not proper.
std::vector<std::uint64_t> greedy_finish(const Graph& g, std::span<const std::uint64_t> classes,
                                         std::uint64_t class_count, std::size_t delta);

/// Round accounting of the distributed pipeline for an n-vertex instance.
struct GreedyPlan {
  std::uint64_t initial_palette = 0;   // n^c, or (n^c)^2 for edges
  std::size_t reduction_rounds = 0;    // Cole–Vishkin iterations
  std::uint64_t reduced_palette = 0;   // classes swept by greedy_finish
  std::size_t sweep_rounds = 0;        // == reduced_palette
  std::size_t total_rounds() const { return reduction_rounds + sweep_rounds; }
};

/// delta is the declared degree bound of the graph the pipeline runs on
/// (the line graph's 2Δ-2 in edge mode).
GreedyPlan greedy_plan(std::uint64_t initial_palette, std::size_t delta);

/// IDs -> reduce_to_constant -> greedy_finish. Vertex mode yields at most
/// delta+1 colors; edge mode runs on the line graph (degree 2Δ-2) and yields
/// at most 2Δ-1 colors.
LocalAlgorithm distributed_greedy(Target mode, std::size_t delta, unsigned c_exponent = kDefaultCExponent);

/// Colors vertices in the given order with the least free color.
std::vector<std::uint64_t> sequential_greedy(const Graph& g, std::span<const Vertex> order);

}  // namespace locsim
