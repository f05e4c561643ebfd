#include "locsim/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "locsim/error.hpp"

namespace locsim {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count > std::numeric_limits<Vertex>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "vertex count exceeds 32-bit range");
  }
  Graph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    Edge norm = e.u < e.v ? e : Edge{e.v, e.u};
    if (norm.u == norm.v) {
      throw Error(ErrorCode::kInvalidArgument, "loop at vertex " + std::to_string(norm.u));
    }
    if (norm.v >= vertex_count) {
      throw Error(ErrorCode::kInvalidArgument, "endpoint " + std::to_string(norm.v) + " out of range");
    }
    g.edges_.push_back(norm);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "parallel edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  }

  g.offsets_.assign(vertex_count + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(2 * g.edges_.size());
  g.adjacency_edges_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so pushing in edge order keeps every
  // neighbor list sorted except for the "v side" entries; sort afterwards.
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.adjacency_[fill[e.u]] = e.v;
    g.adjacency_edges_[fill[e.u]++] = id;
    g.adjacency_[fill[e.v]] = e.u;
    g.adjacency_edges_[fill[e.v]++] = id;
  }
  std::vector<std::pair<Vertex, EdgeId>> scratch;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    const std::size_t begin = g.offsets_[v];
    const std::size_t end = g.offsets_[v + 1];
    g.max_degree_ = std::max(g.max_degree_, end - begin);
    if (std::is_sorted(g.adjacency_.begin() + begin, g.adjacency_.begin() + end)) continue;
    scratch.clear();
    for (std::size_t i = begin; i < end; ++i) scratch.emplace_back(g.adjacency_[i], g.adjacency_edges_[i]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = begin; i < end; ++i) {
      g.adjacency_[i] = scratch[i - begin].first;
      g.adjacency_edges_[i] = scratch[i - begin].second;
    }
  }
  return g;
}

EdgeId Graph::edge_id(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return kNoEdge;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return kNoEdge;
  return incident_edges(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

bool EdgeLabeledGraph::is_nice() const {
  if (label_count == 0) return false;
  std::vector<char> seen(label_count + 1);
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t distinct = 0;
    for (EdgeId e : graph.incident_edges(v)) {
      const auto l = edge_labels[e];
      if (!seen[l]) {
        seen[l] = 1;
        ++distinct;
      }
    }
    if (distinct != label_count) return false;
  }
  return true;
}

std::vector<std::uint64_t> RootedBall::encode() const {
  std::vector<std::uint64_t> out;
  const std::size_t n = local_graph.vertex_count();
  out.reserve(2 + 2 * n + 2 * local_graph.edge_count());
  out.push_back(n);
  out.push_back(radius);
  for (Vertex v = 0; v < n; ++v) {
    out.push_back(labels.empty() ? 0 : labels[v]);
    out.push_back(local_graph.degree(v));
    for (Vertex w : local_graph.neighbors(v)) out.push_back(w);
  }
  return out;
}

GrowthBound GrowthBound::closed_form(std::function<double(std::size_t)> f, std::string name) {
  GrowthBound b;
  b.f_ = std::move(f);
  b.name_ = std::move(name);
  return b;
}

GrowthBound GrowthBound::tabulated(std::vector<double> table, std::string name) {
  if (table.empty()) throw Error(ErrorCode::kInvalidArgument, "empty growth table");
  GrowthBound b;
  b.table_ = std::move(table);
  b.name_ = std::move(name);
  return b;
}

double GrowthBound::operator()(std::size_t r) const {
  if (f_) return f_(r);
  if (r < table_.size()) return table_[r];
  if (!*clamped_) {
    *clamped_ = true;
    std::cerr << "warning: growth table '" << name_ << "' clamped to its last value beyond radius "
              << table_.size() - 1 << "\n";
  }
  return table_.back();
}

std::optional<Family> parse_family(const std::string& name) {
  static const std::pair<const char*, Family> kNames[] = {
      {"cycle", Family::kCycle},
      {"path", Family::kPath},
      {"grid", Family::kGrid},
      {"complete", Family::kComplete},
      {"random_regular", Family::kRandomRegular},
      {"truncated_regular_tree", Family::kTruncatedRegularTree},
      {"star", Family::kStar},
      {"petersen", Family::kPetersen},
      {"circular_ladder", Family::kCircularLadder},
      {"random_bipartite_regular", Family::kRandomBipartiteRegular},
      {"empty", Family::kEmpty},
  };
  for (const auto& [n, f] : kNames) {
    if (name == n) return f;
  }
  return std::nullopt;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::kCycle: return "cycle";
    case Family::kPath: return "path";
    case Family::kGrid: return "grid";
    case Family::kComplete: return "complete";
    case Family::kRandomRegular: return "random_regular";
    case Family::kTruncatedRegularTree: return "truncated_regular_tree";
    case Family::kStar: return "star";
    case Family::kPetersen: return "petersen";
    case Family::kCircularLadder: return "circular_ladder";
    case Family::kRandomBipartiteRegular: return "random_bipartite_regular";
    case Family::kEmpty: return "empty";
  }
  return "unknown";
}

namespace {

void require(bool ok, const std::string& why) {
  if (!ok) throw Error(ErrorCode::kInfeasibleSpec, why);
}

// Uniform random pairing of the stubs by the Rao-Sandelius method: scatter
// stubs to random buckets, then shuffle each bucket; the concatenation is a
// uniform permutation, paired off in consecutive positions. Every bucket fits
// in cache. Returns false as soon as a pair forms a loop.
// Fisher-Yates with Lemire's exact bounded draws, two 32-bit draws per
// 64-bit word. Ranges must be shorter than 2^32.
class HalfWordSource {
 public:
  explicit HalfWordSource(std::mt19937_64& rng) : rng_(rng) {}
  std::uint32_t next() {
    if (!spare_) {
      word_ = rng_();
      spare_ = true;
      return static_cast<std::uint32_t>(word_);
    }
    spare_ = false;
    return static_cast<std::uint32_t>(word_ >> 32);
  }
  std::uint32_t below(std::uint32_t bound) {
    std::uint64_t m = std::uint64_t{next()} * bound;
    if (static_cast<std::uint32_t>(m) < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (static_cast<std::uint32_t>(m) < threshold) m = std::uint64_t{next()} * bound;
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  std::mt19937_64& rng_;
  std::uint64_t word_ = 0;
  bool spare_ = false;
};

template <typename It>
void shuffle_range(It first, It last, HalfWordSource& src) {
  for (auto i = static_cast<std::uint32_t>(last - first); i > 1; --i) std::iter_swap(first + (i - 1), first + src.below(i));
}

bool loop_free_pairing(std::size_t degree, std::vector<Vertex>& out, std::vector<std::vector<Vertex>>& top,
                       std::vector<std::uint8_t>& sub_of, std::mt19937_64& rng) {
  // Two-level bucket labels: 4 bits pick a top bucket in one streaming pass,
  // 8 more bits pick a sub-bucket once the top bucket is in cache. The pair
  // is an iid uniform label over 4096 buckets, and a uniform shuffle of each
  // bucket then gives a uniform permutation of the stubs.
  constexpr std::size_t kTop = 16;
  constexpr std::size_t kSub = 256;
  const std::size_t total = out.size();
  top.resize(kTop);
  for (auto& t : top) {
    t.clear();
    t.reserve(total / kTop + total / (4 * kTop) + 64);
  }
  for (std::size_t i = 0; i < total; i += 16) {
    std::uint64_t word = rng();
    for (std::size_t j = i; j < std::min(total, i + 16); ++j, word >>= 4)
      top[word & (kTop - 1)].push_back(static_cast<Vertex>(j / degree));
  }
  std::size_t base = 0;
  std::size_t checked = 0;  // pairs before this position are loop-free
  std::array<std::size_t, kSub + 1> start{};
  HalfWordSource src(rng);
  for (const auto& bucket : top) {
    sub_of.resize(bucket.size());
    start.fill(0);
    for (std::size_t i = 0; i < bucket.size(); i += 8) {
      std::uint64_t word = rng();
      for (std::size_t j = i; j < std::min(bucket.size(), i + 8); ++j, word >>= 8) {
        sub_of[j] = static_cast<std::uint8_t>(word);
        ++start[sub_of[j] + 1];
      }
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::array<std::size_t, kSub> cursor;
    for (std::size_t k = 0; k < kSub; ++k) cursor[k] = base + start[k];
    for (std::size_t i = 0; i < bucket.size(); ++i) out[cursor[sub_of[i]]++] = bucket[i];
    for (std::size_t k = 0; k < kSub; ++k) {
      const auto first = out.begin() + static_cast<std::ptrdiff_t>(base + start[k]);
      const auto last = out.begin() + static_cast<std::ptrdiff_t>(base + start[k + 1]);
      shuffle_range(first, last, src);
      for (; checked + 1 < base + start[k + 1]; checked += 2)
        if (out[checked] == out[checked + 1]) return false;
    }
    base += bucket.size();
  }
  return true;
}

// Whether the keys contain a repeat. Keys are grouped by their high bits
// first so each group is sorted in cache.
bool has_duplicate(const std::vector<std::uint64_t>& keys, std::size_t vertex_count,
                   std::vector<std::uint64_t>& scratch) {
  constexpr std::size_t kGroups = 4096;
  const std::size_t per_group = vertex_count / kGroups + 1;
  std::vector<std::size_t> start(kGroups + 1, 0);
  for (std::uint64_t k : keys) ++start[(k >> 32) / per_group + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  scratch.resize(keys.size());
  std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
  for (std::uint64_t k : keys) scratch[cursor[(k >> 32) / per_group]++] = k;
  for (std::size_t g = 0; g < kGroups; ++g) {
    const auto first = scratch.begin() + static_cast<std::ptrdiff_t>(start[g]);
    const auto last = scratch.begin() + static_cast<std::ptrdiff_t>(start[g + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) return true;
  }
  return false;
}

// Configuration model: a uniform pairing of the stubs is resampled until it
// has no loop and no parallel edge. Loops are screened during the shuffle
// because most rejections are loops.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t budget) {
  require(n * d % 2 == 0, "n*d must be even for a d-regular graph");
  require(d < n || (d == 0), "d-regular simple graph needs d < n");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs(n * d);
  std::vector<std::vector<Vertex>> top;
  std::vector<std::uint8_t> sub_of;
  std::vector<std::uint64_t> keys(n * d / 2);
  std::vector<std::uint64_t> key_scratch;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    if (!loop_free_pairing(d, stubs, top, sub_of, rng)) continue;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const Vertex a = std::min(stubs[2 * i], stubs[2 * i + 1]);
      const Vertex b = std::max(stubs[2 * i], stubs[2 * i + 1]);
      keys[i] = std::uint64_t{a} << 32 | b;
    }
    if (has_duplicate(keys, n, key_scratch)) continue;
    std::vector<Edge> edges(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
    return Graph::from_edges(n, edges);
  }
  throw Error(ErrorCode::kRetryBudgetExhausted,
              "configuration model found no simple pairing in " + std::to_string(budget) + " attempts");
}

Graph random_bipartite_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t budget) {
  require(n % 2 == 0, "bipartite regular graph needs an even vertex count");
  const std::size_t half = n / 2;
  require(d <= half, "bipartite d-regular graph needs d <= n/2");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> right(half * d);
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    for (std::size_t i = 0; i < right.size(); ++i) right[i] = static_cast<Vertex>(half + i / d);
    edges.clear();
    seen.clear();
    bool ok = true;
    for (std::size_t i = 0; i < right.size(); ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, right.size() - 1);
      std::swap(right[i], right[pick(rng)]);
      const auto a = static_cast<Vertex>(i / d);
      if (!seen.insert(edge_key(a, right[i])).second) {
        ok = false;
        break;
      }
      edges.push_back({a, right[i]});
    }
    if (ok) return Graph::from_edges(n, edges);
  }
  throw Error(ErrorCode::kRetryBudgetExhausted,
              "bipartite configuration model found no simple pairing in " + std::to_string(budget) +
                  " attempts");
}

}  // namespace

Graph gen_graph(const FamilySpec& spec, std::optional<std::size_t> max_degree_cap) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  auto V = [](std::size_t x) { return static_cast<Vertex>(x); };
  Graph g;
  switch (spec.family) {
    case Family::kCycle:
      require(spec.n >= 3, "cycle needs n >= 3");
      n = spec.n;
      for (std::size_t i = 0; i < n; ++i) edges.push_back({V(i), V((i + 1) % n)});
      g = Graph::from_edges(n, edges);
      break;
    case Family::kPath:
      require(spec.n >= 1, "path needs n >= 1");
      n = spec.n;
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({V(i), V(i + 1)});
      g = Graph::from_edges(n, edges);
      break;
    case Family::kGrid: {
      const std::size_t w = spec.width;
      const std::size_t h = spec.height;
      require(w >= 1 && h >= 1, "grid needs positive dimensions");
      require(!spec.wrap || (w >= 3 && h >= 3), "wrapped grid needs both dimensions >= 3");
      n = w * h;
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          const std::size_t id = y * w + x;
          if (x + 1 < w) edges.push_back({V(id), V(id + 1)});
          else if (spec.wrap) edges.push_back({V(y * w), V(id)});
          if (y + 1 < h) edges.push_back({V(id), V(id + w)});
          else if (spec.wrap) edges.push_back({V(x), V(id)});
        }
      }
      g = Graph::from_edges(n, edges);
      break;
    }
    case Family::kComplete:
      require(spec.n >= 1, "complete graph needs n >= 1");
      n = spec.n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({V(i), V(j)});
      g = Graph::from_edges(n, edges);
      break;
    case Family::kRandomRegular:
      g = random_regular(spec.n, spec.degree, spec.seed, spec.retry_budget);
      break;
    case Family::kRandomBipartiteRegular:
      g = random_bipartite_regular(spec.n, spec.degree, spec.seed, spec.retry_budget);
      break;
    case Family::kTruncatedRegularTree: {
      require(spec.degree >= 1, "tree needs degree >= 1");
      std::vector<std::size_t> frontier{0};
      n = 1;
      for (std::size_t level = 0; level < spec.depth; ++level) {
        std::vector<std::size_t> next;
        for (std::size_t parent : frontier) {
          const std::size_t children = parent == 0 ? spec.degree : spec.degree - 1;
          for (std::size_t c = 0; c < children; ++c) {
            edges.push_back({V(parent), V(n)});
            next.push_back(n++);
          }
        }
        frontier = std::move(next);
      }
      g = Graph::from_edges(n, edges);
      break;
    }
    case Family::kStar:
      n = spec.n + 1;
      for (std::size_t i = 1; i < n; ++i) edges.push_back({0, V(i)});
      g = Graph::from_edges(n, edges);
      break;
    case Family::kPetersen:
      n = 10;
      for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({i + 5, (i + 2) % 5 + 5});
      }
      g = Graph::from_edges(n, edges);
      break;
    case Family::kCircularLadder:
      require(spec.n >= 3, "circular ladder needs at least 3 rungs");
      n = 2 * spec.n;
      for (std::size_t i = 0; i < spec.n; ++i) {
        edges.push_back({V(i), V((i + 1) % spec.n)});
        edges.push_back({V(spec.n + i), V(spec.n + (i + 1) % spec.n)});
        edges.push_back({V(i), V(spec.n + i)});
      }
      g = Graph::from_edges(n, edges);
      break;
    case Family::kEmpty:
      g = Graph::from_edges(spec.n, {});
      break;
  }
  if (max_degree_cap && g.max_degree() > *max_degree_cap) {
    throw Error(ErrorCode::kDegreeOverflow, "generated max degree " + std::to_string(g.max_degree()) +
                                                " exceeds cap " + std::to_string(*max_degree_cap));
  }
  return g;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex v, std::size_t max_dist) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<Vertex> queue{v};
  dist[v] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    if (dist[x] >= max_dist) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreached) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

Graph power(const Graph& g, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "power needs k >= 1");
  if (k == 1) return g;
  const std::size_t n = g.vertex_count();
  std::vector<Edge> edges;
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    queue.assign(1, s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      if (dist[x] >= k) continue;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == kUnreached) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (Vertex x : queue) {
      if (x > s) edges.push_back({s, x});
      dist[x] = kUnreached;
    }
  }
  return Graph::from_edges(n, edges);
}

Graph line_graph(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto inc = g.incident_edges(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) edges.push_back({inc[i], inc[j]});
  }
  return Graph::from_edges(g.edge_count(), edges);
}

RootedBall ball(const Graph& g, Vertex v, std::size_t t, std::span<const std::uint64_t> labels) {
  RootedBall b;
  b.radius = t;
  std::unordered_map<Vertex, Vertex> local;
  std::vector<std::pair<std::uint64_t, Vertex>> children;
  b.origin.push_back(v);
  b.depth.push_back(0);
  local.emplace(v, 0);
  for (std::size_t head = 0; head < b.origin.size(); ++head) {
    const Vertex x = b.origin[head];
    if (b.depth[head] >= t) continue;
    children.clear();
    for (Vertex y : g.neighbors(x)) {
      if (!local.contains(y)) children.emplace_back(labels.empty() ? 0 : labels[y], y);
    }
    std::sort(children.begin(), children.end());
    for (const auto& [label, y] : children) {
      local.emplace(y, static_cast<Vertex>(b.origin.size()));
      b.origin.push_back(y);
      b.depth.push_back(b.depth[head] + 1);
    }
  }
  std::vector<Edge> edges;
  for (Vertex lx = 0; lx < b.origin.size(); ++lx) {
    for (Vertex y : g.neighbors(b.origin[lx])) {
      auto it = local.find(y);
      if (it != local.end() && lx < it->second) edges.push_back({lx, it->second});
    }
  }
  b.local_graph = Graph::from_edges(b.origin.size(), edges);
  if (!labels.empty()) {
    b.labels.reserve(b.origin.size());
    for (Vertex x : b.origin) b.labels.push_back(labels[x]);
  }
  return b;
}

std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    queue.assign(1, s);
    dist[s] = 0;
    parent[s] = s;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      // Any cycle found from here on has length >= 2*dist[x] + 1.
      if (2 * static_cast<std::size_t>(dist[x]) + 1 >= best) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == kUnreached) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          best = std::min<std::size_t>(best, dist[x] + dist[y] + 1);
        }
      }
    }
    for (Vertex x : queue) dist[x] = kUnreached;
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

GrowthCheck check_growth(const Graph& g, const GrowthBound& f, std::size_t max_radius) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    queue.assign(1, s);
    dist[s] = 0;
    std::size_t layer_end = 1;
    std::size_t r = 0;
    std::size_t head = 0;
    GrowthCheck fail;
    fail.pass = true;
    while (true) {
      // queue[0, layer_end) is B(s, r).
      if (static_cast<double>(layer_end) >= f(r)) {
        fail = {false, s, r, layer_end};
        break;
      }
      if (f(r) > static_cast<double>(n) || r >= max_radius) break;  // monotone f: no later failure
      for (; head < layer_end; ++head) {
        const Vertex x = queue[head];
        for (Vertex y : g.neighbors(x)) {
          if (dist[y] == kUnreached) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
        }
      }
      if (queue.size() == layer_end) break;  // reached eccentricity
      layer_end = queue.size();
      ++r;
    }
    for (Vertex x : queue) dist[x] = kUnreached;
    if (!fail.pass) return fail;
  }
  return {};
}

EdgeLabeledGraph union_labeled(std::span<const Graph> parts) {
  if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "union_labeled needs at least one part");
  const std::size_t n = parts.front().vertex_count();
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::uint32_t> label_of;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].vertex_count() != n) {
      throw Error(ErrorCode::kInvalidArgument, "parts must share the vertex set");
    }
    for (const Edge& e : parts[i].edges()) {
      if (!label_of.emplace(edge_key(e.u, e.v), static_cast<std::uint32_t>(i + 1)).second) {
        throw Error(ErrorCode::kEdgeCollision,
                    "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " appears in two parts");
      }
      edges.push_back(e);
    }
  }
  EdgeLabeledGraph out;
  out.graph = Graph::from_edges(n, edges);
  out.label_count = static_cast<std::uint32_t>(parts.size());
  out.edge_labels.resize(out.graph.edge_count());
  for (EdgeId id = 0; id < out.graph.edge_count(); ++id) {
    const Edge& e = out.graph.edge(id);
    out.edge_labels[id] = label_of.at(edge_key(e.u, e.v));
  }
  return out;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << " 0\n";
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph(std::ostream& out, const EdgeLabeledGraph& g) {
  if (g.label_count == 0) {
    write_graph(out, g.graph);
    return;
  }
  out << g.graph.vertex_count() << ' ' << g.graph.edge_count() << ' ' << g.label_count << '\n';
  for (EdgeId id = 0; id < g.graph.edge_count(); ++id) {
    const Edge& e = g.graph.edge(id);
    out << e.u << ' ' << e.v << ' ' << g.edge_labels[id] << '\n';
  }
}

std::string to_text(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

std::string to_text(const EdgeLabeledGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

EdgeLabeledGraph read_graph(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t labels = 0;
  if (!(in >> n >> m >> labels)) throw Error(ErrorCode::kParse, "missing 'n m L' header");
  std::vector<Edge> edges(m);
  std::vector<std::pair<Edge, std::uint32_t>> labeled;
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(in >> u >> v)) throw Error(ErrorCode::kParse, "edge line " + std::to_string(i + 1) + " truncated");
    if (u >= n || v >= n) throw Error(ErrorCode::kParse, "edge line " + std::to_string(i + 1) + " out of range");
    edges[i] = {static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
    if (labels > 0) {
      std::uint64_t l = 0;
      if (!(in >> l) || l < 1 || l > labels) {
        throw Error(ErrorCode::kParse, "edge line " + std::to_string(i + 1) + " has no valid label");
      }
      labeled.emplace_back(edges[i], static_cast<std::uint32_t>(l));
    }
  }
  EdgeLabeledGraph out;
  try {
    out.graph = Graph::from_edges(n, edges);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  out.label_count = static_cast<std::uint32_t>(labels);
  if (labels > 0) {
    out.edge_labels.resize(m);
    for (const auto& [e, l] : labeled) out.edge_labels[out.graph.edge_id(e.u, e.v)] = l;
  }
  return out;
}

EdgeLabeledGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  return read_graph(in);
}

}  // namespace locsim
