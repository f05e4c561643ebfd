#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "locsim/graph.hpp"

namespace locsim {

/// Partial proper edge coloring with colors 1..palette (0 = uncolored).
///
/// Keeps, for every vertex and color, the incident edge holding that color,
/// so missing-color queries and recolors are O(1). The coloring is proper at
/// all times: every mutation path validates before writing.
class PartialEdgeColoring {
 public:
  /// All edges uncolored; palette defaults to max_degree + 1.
  explicit PartialEdgeColoring(const Graph& g, std::optional<std::uint64_t> palette = std::nullopt);

  /// Throws kImproperInput when `colors` is improper or out of range.
  PartialEdgeColoring(const Graph& g, std::vector<std::uint64_t> colors,
                      std::optional<std::uint64_t> palette = std::nullopt);

  const Graph& graph() const { return *g_; }
  std::uint64_t palette() const { return palette_; }
  std::uint64_t color(EdgeId e) const { return colors_[e]; }
  const std::vector<std::uint64_t>& colors() const { return colors_; }
  bool is_colored(EdgeId e) const { return colors_[e] != 0; }
  std::size_t colored_count() const { return colored_; }
  std::vector<EdgeId> uncolored() const;

  bool is_missing(Vertex v, std::uint64_t c) const { return at(v, c) == kNoEdge; }
  /// Edge at v holding color c, or kNoEdge.
  EdgeId at(Vertex v, std::uint64_t c) const { return slot_[static_cast<std::size_t>(v) * (palette_ + 1) + c]; }
  std::vector<std::uint64_t> missing(Vertex v) const;
  std::uint64_t least_missing(Vertex v) const;
  /// Least color missing at both u and v, or 0.
  std::uint64_t least_common_missing(Vertex u, Vertex v) const;

  /// Recolors e (0 uncolors it). Throws kImproperInput on a clash.
  void set(EdgeId e, std::uint64_t c);

  bool is_proper() const;

  friend bool operator==(const PartialEdgeColoring& a, const PartialEdgeColoring& b) {
    return a.colors_ == b.colors_;
  }

 private:
  EdgeId& slot(Vertex v, std::uint64_t c) { return slot_[static_cast<std::size_t>(v) * (palette_ + 1) + c]; }
  void write(EdgeId e, std::uint64_t c);

  const Graph* g_;
  std::uint64_t palette_;
  std::vector<std::uint64_t> colors_;
  std::vector<EdgeId> slot_;
  std::size_t colored_ = 0;
};

/// Sequence of edges where consecutive edges share an endpoint.
struct Chain {
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool edge_injective() const;
  bool connected(const Graph& g) const;
  Chain reversed() const;
  Chain operator+(const Chain& tail) const;
};

/// Edges of a fan all contain the pivot.
struct Fan {
  Vertex pivot = 0;
  Chain edges;
};

struct AlternatingPath {
  Vertex start = 0;
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  Chain edges;
  /// Vertices visited, start first; one longer than edges.
  std::vector<Vertex> vertices;
  bool truncated = false;

  /// First `t` edges, marked truncated when t < length.
  AlternatingPath prefix(std::size_t t) const;
};

struct VizingChain {
  Fan fan;
  AlternatingPath path;

  Chain chain() const { return fan.edges + path.edges; }
};

/// Throws kNotShiftable unless P is connected, edge-injective, starts at an
/// uncolored edge and is colored elsewhere; kImproperShift when the shifted
/// coloring would be improper. The state is unchanged on error.
void shift_in_place(PartialEdgeColoring& state, const Chain& p);
PartialEdgeColoring shift(const PartialEdgeColoring& state, const Chain& p);
/// Inverse of shift: shifts the reversed chain.
void unshift_in_place(PartialEdgeColoring& state, const Chain& p);

/// Maximal α/β alternating path from x starting with α, stopping before any
/// repeated edge. Empty when x has no α edge.
AlternatingPath alternating_path(const PartialEdgeColoring& state, Vertex x, std::uint64_t alpha,
                                 std::uint64_t beta);

/// Augmenting Vizing chain for the uncolored edge e at x.
///
/// The fan grows by the least missing color of its current tip and closes on
/// a color missing at both x and the tip. Otherwise α is the least color
/// missing at x, β the least missing at the tip y_k, and β colors the fan edge
/// to y_j; the chain is F(0..k) + P(y_k) or F(0..j-1) + P(y_{j-1}), whichever
/// shifts properly and ends augmenting.
VizingChain build_vizing_chain(const PartialEdgeColoring& state, Vertex x, EdgeId e);

/// True when P is proper-shiftable and the endpoints of its last edge share a
/// missing color after the shift.
bool is_augmenting(const PartialEdgeColoring& state, const Chain& p);

/// Shifts P and colors its last edge with the least common missing color.
/// Throws kNotAugmenting; the state is unchanged on error.
void augment_in_place(PartialEdgeColoring& state, const Chain& p);
PartialEdgeColoring augment(const PartialEdgeColoring& state, const Chain& p);

/// Colors every edge, in edge-id order, through Vizing chains.
std::vector<std::uint64_t> sequential_vizing(const Graph& g);

/// One step of a multi-step chain: a fan plus its (possibly truncated) path.
struct VizingStep {
  Fan fan;
  AlternatingPath path;
};

/// Steps are applied in order; each truncated step leaves the last kept path
/// edge uncolored, and the next fan starts at that edge. Only the last step
/// is untruncated.
struct MultiStepVizingChain {
  std::vector<VizingStep> steps;
  /// Attempts abandoned because no legal truncation point existed.
  std::size_t restarts = 0;

  /// Edges over all steps, each junction edge counted once.
  std::size_t size() const;
  std::vector<EdgeId> distinct_edges() const;
};

struct MultiStepOptions {
  std::size_t max_steps = 64;
  /// ℓ; 0 selects ceil(log2 n) * Δ^delta_power.
  std::size_t trunc_len = 0;
  unsigned delta_power = 1;
  std::uint64_t seed = 0;
};

std::size_t default_trunc_len(const Graph& g, unsigned delta_power = 1);

/// Grows Vizing chains from e, truncating any path longer than ℓ at a seeded
/// uniform legal point in 1..ℓ and continuing from the far endpoint of the
/// last kept edge. A truncation point is legal when the kept prefix shares no
/// edge with earlier truncated paths and its endpoint is not a pivot of an
/// earlier step. When no point is legal the attempt restarts from e; steps of
/// abandoned attempts count against max_steps. Throws kStepBudgetExhausted.
MultiStepVizingChain multi_step_search(const PartialEdgeColoring& state, EdgeId e,
                                       const MultiStepOptions& options = {});

/// Replays the steps and colors the final edge. Throws kNotAugmenting.
void augment_in_place(PartialEdgeColoring& state, const MultiStepVizingChain& chain);

/// Every multi-step chain from e with at most max_steps steps, one per choice
/// of legal truncation points (truncated chains at the step bound included).
/// Throws kEnumerationBudgetExhausted past `budget` chains.
std::vector<MultiStepVizingChain> enumerate_chains(const PartialEdgeColoring& state, EdgeId e,
                                                   std::size_t max_steps, std::size_t trunc_len,
                                                   std::size_t budget = 1'000'000);

/// Number of chains from all uncolored edges (as enumerate_chains) whose
/// distinct edges include f. Uncolored f yields 0.
std::size_t chains_through(const PartialEdgeColoring& state, EdgeId f, std::size_t max_steps,
                           std::size_t trunc_len, std::size_t budget = 1'000'000);

/// `u v color` per edge; uncolored edges are written with color 0.
void write_edge_coloring(std::ostream& out, const Graph& g, const std::vector<std::uint64_t>& colors);

/// `step role u v` per edge, role being fan or path.
void write_chain_trace(std::ostream& out, const Graph& g, const MultiStepVizingChain& chain);

}  // namespace locsim
