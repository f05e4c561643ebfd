#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace locsim {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Undirected edge with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool contains(Vertex x) const { return x == u || x == v; }
};

/// Bounded-degree simple undirected graph in compressed adjacency form.
///
/// Vertices are 0..vertex_count()-1, neighbor lists are sorted, edges are
/// numbered in sorted (u, v) order. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Endpoints may come in either order.
  /// Throws Error(kInvalidArgument) on loops, duplicate edges or out-of-range
  /// endpoints.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t max_degree() const { return max_degree_; }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }

  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {adjacency_edges_.data() + offsets_[v], degree(v)};
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v) != kNoEdge; }

  /// Returns kNoEdge when u and v are not adjacent.
  EdgeId edge_id(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
  std::vector<Edge> edges_;
  std::size_t max_degree_ = 0;
};

/// Graph with one label in 1..label_count per edge.
struct EdgeLabeledGraph {
  Graph graph;
  std::vector<std::uint32_t> edge_labels;  // indexed by EdgeId
  std::uint32_t label_count = 0;

  std::uint32_t label(Vertex u, Vertex v) const { return edge_labels[graph.edge_id(u, v)]; }

  /// True when every vertex sees every label on some incident edge.
  bool is_nice() const;
};

/// Induced radius-t neighborhood of a vertex.
///
/// Local vertices are numbered in breadth-first order from the root (local 0);
/// children of a vertex are ordered by (label, global index).
struct RootedBall {
  Vertex root = 0;
  Graph local_graph;
  std::vector<std::uint64_t> labels;  // per local vertex, empty when unlabeled
  std::vector<Vertex> origin;         // local -> global vertex
  std::vector<std::uint32_t> depth;   // distance from root
  std::size_t radius = 0;

  /// Canonical serialization: BFS order labels plus local adjacency. Two balls
  /// with the same encoding are isomorphic as labeled rooted graphs.
  std::vector<std::uint64_t> encode() const;
};

/// Function radius -> bound on |B(v, r)|. Either closed-form or tabulated;
/// a tabulated bound is clamped to its last entry past the end of the table.
class GrowthBound {
 public:
  static GrowthBound closed_form(std::function<double(std::size_t)> f, std::string name = {});
  static GrowthBound tabulated(std::vector<double> table, std::string name = {});

  double operator()(std::size_t r) const;

  const std::string& name() const { return name_; }
  bool clamped() const { return *clamped_; }

 private:
  std::function<double(std::size_t)> f_;
  std::vector<double> table_;
  std::string name_;
  std::shared_ptr<bool> clamped_ = std::make_shared<bool>(false);
};

enum class Family {
  kCycle,
  kPath,
  kGrid,
  kComplete,
  kRandomRegular,
  kTruncatedRegularTree,
  kStar,
  kPetersen,
  kCircularLadder,
  kRandomBipartiteRegular,
  kEmpty,
};

/// Family descriptor for gen_graph. Only the fields relevant to the family
/// are read: n (cycle, path, complete, random_regular, star = leaves,
/// circular_ladder = rungs, random_bipartite_regular = total vertices,
/// empty), width/height/wrap (grid), degree (random regular families, tree
/// branching), depth (tree), seed (random families).
struct FamilySpec {
  Family family = Family::kCycle;
  std::size_t n = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  bool wrap = false;
  std::size_t degree = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t retry_budget = 1000;
};

std::optional<Family> parse_family(const std::string& name);
std::string family_name(Family family);

/// Throws kInfeasibleSpec, kDegreeOverflow (when max_degree_cap is exceeded)
/// or kRetryBudgetExhausted.
Graph gen_graph(const FamilySpec& spec, std::optional<std::size_t> max_degree_cap = std::nullopt);

/// Vertices adjacent iff their distance in g is in 1..k.
Graph power(const Graph& g, std::size_t k);

/// One vertex per edge (vertex i <-> edge id i); adjacent iff edges share an endpoint.
Graph line_graph(const Graph& g);

RootedBall ball(const Graph& g, Vertex v, std::size_t t,
                std::span<const std::uint64_t> labels = {});

/// Breadth-first distances from v, truncated at max_dist. Unreached vertices
/// get numeric_limits<uint32_t>::max().
std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex v,
                                         std::size_t max_dist = std::numeric_limits<std::size_t>::max());

/// Length of the shortest cycle, nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

struct GrowthCheck {
  bool pass = true;
  Vertex witness_vertex = 0;
  std::size_t witness_radius = 0;
  std::size_t witness_ball_size = 0;
};

/// Passes iff |B(v, r)| < f(r) for every v and every r up to the
/// eccentricity of v (and at most max_radius). The witness is the first
/// failure in (v, r) order.
GrowthCheck check_growth(const Graph& g, const GrowthBound& f,
                         std::size_t max_radius = std::numeric_limits<std::size_t>::max());

/// Union of edge-disjoint parts on a shared vertex set; edges of part i get
/// label i + 1. Throws kEdgeCollision when two parts share an edge.
EdgeLabeledGraph union_labeled(std::span<const Graph> parts);

/// Text format: "n m L" then m lines "u v [label]", 0-based, u < v, sorted.
void write_graph(std::ostream& out, const Graph& g);
void write_graph(std::ostream& out, const EdgeLabeledGraph& g);
std::string to_text(const Graph& g);
std::string to_text(const EdgeLabeledGraph& g);

/// Reads either form; unlabeled graphs come back with label_count 0 and no labels.
EdgeLabeledGraph read_graph(std::istream& in);
EdgeLabeledGraph read_graph_file(const std::string& path);

}  // namespace locsim
