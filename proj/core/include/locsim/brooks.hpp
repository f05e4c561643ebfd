#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "locsim/graph.hpp"
#include "locsim/local_sim.hpp"
#include "locsim/vertex_coloring.hpp"

namespace locsim {

/// Recoloring that extends a partial Δ-coloring by one vertex.
struct RecoloringPatch {
  Vertex newly_colored = 0;
  /// (vertex, new color) pairs, newly_colored included.
  std::vector<std::pair<Vertex, std::uint64_t>> changed;
  /// Largest distance from newly_colored among changed vertices.
  std::size_t radius = 0;
};

/// Largest ε on the grid j/1024 (j = 1..1024) with C * log2(1 + ε) < 1.
double choose_epsilon(double C);

/// Least R with f(R) < (1 + ε)^R where ε = choose_epsilon(C). Throws kNoRFound
/// when no R <= scan_budget qualifies.
std::size_t choose_R(const GrowthBound& f, double C, std::size_t scan_budget = 4096);

struct PatchSearchOptions {
  /// Longest shift path tried before the exhaustive fallback.
  std::size_t max_shift_length = 12;
  /// Search nodes for the shift-path phase and for each fallback radius.
  std::size_t node_budget = 2'000'000;
};

/// Finds a patch coloring v with a color in 1..delta.
///
/// Tries, in order: a free color at v; the shortest shift path
/// v = u0, u1, ..., uk inside the component of v in B(v, R) ∩ (dom ∪ {v}),
/// where u_i takes the old color of u_{i+1} and uk takes a free color; an
/// exhaustive recoloring of that component restricted to growing radii,
/// keeping every vertex outside it fixed. Throws kNoPatchInBall when the
/// budget runs out or no recoloring exists, kInvalidArgument when v is
/// already colored.
RecoloringPatch find_augmenting_recoloring(const Graph& g, const PartialVertexColoring& c, Vertex v,
                                           std::size_t R, std::size_t delta,
                                           const PatchSearchOptions& options = {});

/// Applies a patch; throws kImproperInput when the result is improper.
void apply_patch(const Graph& g, PartialVertexColoring& c, const RecoloringPatch& patch);

/// Throws kKCliqueFound when some closed neighborhood is a K_{delta+1}.
void check_no_big_clique(const Graph& g, std::size_t delta);

struct SweepRecord {
  std::uint64_t class_index = 0;
  std::size_t class_size = 0;
  std::size_t patches = 0;
  std::size_t nontrivial_patches = 0;
  std::size_t max_patch_radius = 0;
  bool disjoint = true;
  bool proper_after = true;
};

struct BrooksOptions {
  /// Palette size; 0 means the maximum degree of the input.
  std::size_t delta = 0;
  IdOptions ids;
  unsigned c_exponent = kDefaultCExponent;
  /// Overrides choose_R when set.
  std::optional<std::size_t> radius;
  PatchSearchOptions patch;
};

struct BrooksResult {
  std::vector<std::uint64_t> colors;
  std::size_t R = 0;
  double epsilon = 0;
  std::size_t delta = 0;
  /// Δ^{2R+2} + 1: class indices the schedule sweeps, empty ones included.
  BigCount class_count;
  /// Equals class_count; kept separately as the measured count.
  BigCount sweeps;
  /// Rounds of the power-graph coloring, measured in rounds of g.
  BigCount coloring_rounds;
  /// coloring_rounds + sweeps * (2R + 1): each sweep gathers the radius-(R+1)
  /// view and broadcasts the patch back over R hops.
  BigCount total_rounds;
  std::vector<SweepRecord> log;  // one record per nonempty class
};

/// Δ-coloring for graphs of growth bounded by f.
///
/// Colors power(g, 2R+2) with distributed greedy, then sweeps the classes;
/// all uncolored vertices of a class receive patches computed against the
/// same coloring, which are checked for disjointness and applied together.
/// Throws kKCliqueFound, kGrowthViolated (growth checked up to radius 2R+2),
/// kNoPatchInBall, kInvalidArgument for Δ < 3.
BrooksResult subexp_brooks(const Graph& g, const GrowthBound& f, double C, const BrooksOptions& options = {});

/// Reference Δ-coloring: greedy in vertex order, patching with unbounded
/// radius whenever no color is free. Δ = 2 is handled by 2-coloring.
/// Throws kKCliqueFound or kOddCycleWithDeltaTwo.
std::vector<std::uint64_t> sequential_brooks(const Graph& g);

}  // namespace locsim
