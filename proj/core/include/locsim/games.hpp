#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locsim/graph.hpp"

namespace locsim {

enum class GameVariant { kPlain, kEdgeLabeled, kIdLabels };
enum class Player { kI, kII };

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

/// Rooted tree of depth `depth` in which the root has Δ children and every
/// other inner vertex Δ-1. Vertices are numbered in breadth-first order.
/// Edges carry a proper Δ-edge-coloring: the root's children use colors 1..Δ
/// in order, and the children of any other vertex use the colors other than
/// the color of its parent edge, in increasing order.
struct TreeFragment {
  std::size_t delta = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::uint32_t> edge_color;  // color of the edge to the parent, 0 at the root
  std::vector<std::size_t> level;

  static TreeFragment regular(std::size_t delta, std::size_t depth);

  std::size_t size() const { return parent.size(); }
};

/// Canonical key of the labeled ball of radius `radius` around the root of a
/// fully labeled fragment. With `edge_colored` false, sibling subtrees are
/// unordered; otherwise children are identified by their edge colors.
std::string ball_key(const TreeFragment& tree, std::span<const std::uint64_t> labels, std::size_t radius,
                     bool edge_colored);

/// GLOCAL algorithm: sees the labeled ball of radius `radius` around a vertex
/// and outputs a color in 1..Δ, or nothing where it is undefined.
struct GlocalAlgorithm {
  std::size_t radius = 0;
  std::function<std::optional<std::uint64_t>(const TreeFragment&, std::span<const std::uint64_t>)> evaluate;

  /// Reads the root label only: output coloring[label].
  static GlocalAlgorithm zero_round(std::vector<std::uint64_t> coloring);
  static GlocalAlgorithm constant(std::uint64_t color);
  /// Table over ball_key classes; missing keys are undefined outputs.
  static GlocalAlgorithm from_table(std::size_t radius, std::map<std::string, std::uint64_t> table,
                                    bool edge_colored);
};

struct GameSpec {
  EdgeLabeledGraph target;  // label_count 0 for the plain variant
  std::size_t delta = 0;
  std::size_t rounds = 0;
  Vertex start = 0;
  std::uint64_t forbidden = 1;
  GlocalAlgorithm alg;
  GameVariant variant = GameVariant::kPlain;
  /// id_labels only: injective map V(H) -> identifiers seen by alg. Empty
  /// means the identity.
  std::vector<std::uint64_t> ids;
  std::size_t budget = 5'000'000;
};

/// Partial labeling of the fragment (nullopt = unlabeled) plus the index of
/// the next vertex in the move schedule.
struct GamePosition {
  std::vector<std::optional<Vertex>> labels;
  std::size_t cursor = 0;
};

namespace detail {
class GameSolver;
}

struct Winner {
  Player who = Player::kII;
  /// Distinct canonical positions evaluated.
  std::size_t positions = 0;
  std::shared_ptr<detail::GameSolver> solver;

  /// The winner's move at `p` (label for the scheduled vertex), nullopt when
  /// it is not the winner's turn or the position is terminal.
  std::optional<Vertex> move(const GamePosition& p) const;
};

/// Move schedule: round n labels the depth-n vertices, I's side (the subtree
/// of the root's child along edge color i) first, then II's.
std::vector<std::size_t> game_schedule(const TreeFragment& tree, std::uint64_t forbidden);

/// Exhaustive minimax with memoization over canonical positions. A player
/// with no legal move loses. Throws kBudgetExhausted,
/// kAlgorithmUndefinedAtTerminal and kInvalidArgument (bad spec, or a
/// non-nice labeling in the labeled variants).
Winner solve_game(const GameSpec& spec);

/// Plays the winner's strategy against every opponent reply and confirms
/// every reachable terminal is won.
bool audit_strategy(const GameSpec& spec, const Winner& winner);

/// c(v) = min{i : II wins G(v,i)}. Throws kNoWinningIndex.
std::vector<std::uint64_t> extract_coloring(const Graph& h, std::size_t delta, std::size_t rounds,
                                            const GlocalAlgorithm& alg);
std::vector<std::uint64_t> extract_coloring(const EdgeLabeledGraph& h, std::size_t delta, std::size_t rounds,
                                            const GlocalAlgorithm& alg,
                                            GameVariant variant = GameVariant::kEdgeLabeled);

/// Winners of G(v,i) for every v and i in 1..Δ; games run in parallel.
struct GameReport {
  std::vector<std::vector<Player>> winners;  // [v][i-1]
  std::optional<std::vector<std::uint64_t>> coloring;
};
GameReport game_report(const EdgeLabeledGraph& h, std::size_t delta, std::size_t rounds, const GlocalAlgorithm& alg,
                       GameVariant variant);
void write_game_report(std::ostream& out, const GameReport& report);

struct ChiElResult {
  bool colorable = false;
  std::vector<std::uint64_t> witness;
};

/// Whether some c: V(H) -> 1..Δ has no edge vw with c(v) = c(w) = label(vw).
/// Backtracking with forward checking; throws kBudgetExhausted.
ChiElResult chi_el_decide(const EdgeLabeledGraph& h, std::size_t delta, std::size_t budget = 50'000'000);

/// Searches for an r-round GLOCAL Δ-coloring of the H-labeled Δ-regular tree.
/// Throws kBudgetExhausted.
std::optional<GlocalAlgorithm> glocal_search(const Graph& h, std::size_t delta, std::size_t rounds,
                                             std::size_t budget = 50'000'000);
bool glocal_exists(const Graph& h, std::size_t delta, std::size_t rounds, std::size_t budget = 50'000'000);

struct IdGraphCertificate {
  EdgeLabeledGraph graph;
  std::optional<std::size_t> girth;  // nullopt for forests
  std::size_t attempts = 0;
};

/// Unions delta_labels seeded random d-regular graphs per attempt and returns
/// the first candidate with girth > girth_min and chi_el > delta_labels.
std::optional<IdGraphCertificate> id_graph_search(std::size_t n, std::size_t delta_labels, std::size_t d,
                                                  std::size_t girth_min, std::uint64_t seed, std::size_t retries);
void write_certificate(std::ostream& out, const IdGraphCertificate& cert);

/// Validates that `labeling` maps the fragment into H preserving edge labels
/// (kNotAHomomorphism otherwise) and reports whether it is injective on every
/// radius-(k+1) neighborhood of the fragment.
bool check_local_injectivity(const TreeFragment& tree, std::span<const Vertex> labeling, const EdgeLabeledGraph& h,
                             std::size_t k);

}  // namespace locsim
