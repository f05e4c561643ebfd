#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "locsim/graph.hpp"

namespace locsim {

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Matching stored as a mate array.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t vertex_count) : mate_(vertex_count, kNoVertex) {}

  /// Throws kInvalidArgument when two edges share a vertex.
  static Matching from_edges(const Graph& g, std::span<const EdgeId> edges);

  std::size_t vertex_count() const { return mate_.size(); }
  std::size_t size() const { return size_; }
  bool is_matched(Vertex v) const { return mate_[v] != kNoVertex; }
  Vertex mate(Vertex v) const { return mate_[v]; }
  bool contains(Vertex u, Vertex v) const { return mate_[u] == v; }
  std::vector<Vertex> unmatched() const;
  /// Matched pairs with u < v, sorted.
  std::vector<Edge> edges() const;

  void match(Vertex u, Vertex v);
  void unmatch(Vertex u);

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Vertex> mate_;
  std::size_t size_ = 0;
};

/// Vertex sequence v1..vk; its length is the number of edges, k - 1.
struct MatchingAugmentingPath {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Greedy scan over the edges in the given order (edge-id order when empty).
Matching maximal_matching(const Graph& g, std::span<const EdgeId> order = {});

/// Whether P is vertex-simple, follows edges of g, joins two unmatched
/// vertices and uses M-edges exactly at its even positions.
bool is_augmenting(const Graph& g, const Matching& m, const MatchingAugmentingPath& p);

/// A shortest augmenting path with fewer than max_len edges, ties broken by
/// the least endpoint, which comes first in the result. Bipartite graphs use
/// alternating breadth-first search; other graphs use iterative deepening
/// over simple alternating paths.
std::optional<MatchingAugmentingPath> find_aug_path(const Graph& g, const Matching& m, std::size_t max_len);

/// Swaps matched and unmatched edges along P. Throws kNotAugmenting.
Matching flip(const Graph& g, const Matching& m, const MatchingAugmentingPath& p);

struct StageLog {
  std::size_t k = 0;
  std::size_t flips = 0;
  std::size_t unmatched = 0;
};

/// Flips shortest augmenting paths of length < k until none is left.
Matching stage_eliminate(const Graph& g, Matching m, std::size_t k, StageLog* log = nullptr);

/// One `u v` line per matched edge.
void write_matching(std::ostream& out, const Matching& m);

}  // namespace locsim
