#include "locsim/matching.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <string>

#include "locsim/error.hpp"

namespace locsim {

Matching Matching::from_edges(const Graph& g, std::span<const EdgeId> edges) {
  Matching m(g.vertex_count());
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    if (m.is_matched(ed.u) || m.is_matched(ed.v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edges " + std::to_string(ed.u) + "-" + std::to_string(ed.v) + " overlaps the matching");
    }
    m.match(ed.u, ed.v);
  }
  return m;
}

std::vector<Vertex> Matching::unmatched() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < mate_.size(); ++v)
    if (mate_[v] == kNoVertex) out.push_back(v);
  return out;
}

std::vector<Edge> Matching::edges() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < mate_.size(); ++v)
    if (mate_[v] != kNoVertex && v < mate_[v]) out.push_back({v, mate_[v]});
  return out;
}

void Matching::match(Vertex u, Vertex v) {
  mate_[u] = v;
  mate_[v] = u;
  ++size_;
}

void Matching::unmatch(Vertex u) {
  const Vertex v = mate_[u];
  if (v == kNoVertex) return;
  mate_[u] = kNoVertex;
  mate_[v] = kNoVertex;
  --size_;
}

Matching maximal_matching(const Graph& g, std::span<const EdgeId> order) {
  Matching m(g.vertex_count());
  auto consider = [&](EdgeId e) {
    const Edge& ed = g.edge(e);
    if (!m.is_matched(ed.u) && !m.is_matched(ed.v)) m.match(ed.u, ed.v);
  };
  if (order.empty()) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) consider(e);
  } else {
    for (EdgeId e : order) consider(e);
  }
  return m;
}

bool is_augmenting(const Graph& g, const Matching& m, const MatchingAugmentingPath& p) {
  const auto& v = p.vertices;
  if (v.size() < 2 || v.size() % 2 != 0) return false;
  if (m.is_matched(v.front()) || m.is_matched(v.back())) return false;
  std::vector<Vertex> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] >= g.vertex_count() || v[i + 1] >= g.vertex_count() || !g.has_edge(v[i], v[i + 1])) return false;
    if (m.contains(v[i], v[i + 1]) != (i % 2 == 1)) return false;
  }
  return true;
}

namespace {

std::optional<std::vector<int>> two_coloring(const Graph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  std::queue<Vertex> q;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      for (Vertex y : g.neighbors(x)) {
        if (side[y] < 0) {
          side[y] = 1 - side[x];
          q.push(y);
        } else if (side[y] == side[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

// Alternating BFS from a free vertex. In a bipartite graph every vertex sits
// at a fixed parity from s, so visiting each vertex once loses no path.
std::optional<MatchingAugmentingPath> bfs_from(const Graph& g, const Matching& m, Vertex s, std::size_t max_len) {
  std::vector<Vertex> parent(g.vertex_count(), kNoVertex);
  std::vector<std::size_t> depth(g.vertex_count(), 0);
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<Vertex> q;
  seen[s] = 1;
  q.push(s);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    if (depth[x] + 1 >= max_len) continue;
    for (Vertex y : g.neighbors(x)) {
      if (seen[y] || m.contains(x, y)) continue;
      seen[y] = 1;
      parent[y] = x;
      depth[y] = depth[x] + 1;
      if (!m.is_matched(y)) {
        MatchingAugmentingPath p;
        for (Vertex z = y; z != kNoVertex; z = parent[z]) p.vertices.push_back(z);
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
      }
      const Vertex z = m.mate(y);
      if (seen[z]) continue;
      seen[z] = 1;
      parent[z] = y;
      depth[z] = depth[y] + 1;
      q.push(z);
    }
  }
  return std::nullopt;
}

class ExactLengthSearch {
 public:
  ExactLengthSearch(const Graph& g, const Matching& m) : g_(g), m_(m), on_path_(g.vertex_count(), 0) {}

  std::optional<MatchingAugmentingPath> run(Vertex s, std::size_t length) {
    length_ = length;
    path_.assign(1, s);
    on_path_[s] = 1;
    const bool found = extend();
    on_path_[s] = 0;
    if (!found) return std::nullopt;
    MatchingAugmentingPath p{path_};
    for (Vertex v : path_) on_path_[v] = 0;
    return p;
  }

 private:
  // path_ ends at a vertex reached by a matched edge (or at the start).
  bool extend() {
    const Vertex x = path_.back();
    const std::size_t used = path_.size() - 1;
    for (Vertex y : g_.neighbors(x)) {
      if (on_path_[y] || m_.contains(x, y)) continue;
      if (!m_.is_matched(y)) {
        if (used + 1 == length_) {
          path_.push_back(y);
          return true;
        }
        continue;
      }
      const Vertex z = m_.mate(y);
      if (on_path_[z] || used + 3 > length_) continue;
      path_.push_back(y);
      path_.push_back(z);
      on_path_[y] = on_path_[z] = 1;
      if (extend()) return true;
      on_path_[y] = on_path_[z] = 0;
      path_.resize(path_.size() - 2);
    }
    return false;
  }

  const Graph& g_;
  const Matching& m_;
  std::vector<char> on_path_;
  std::vector<Vertex> path_;
  std::size_t length_ = 0;
};

}  // namespace

std::optional<MatchingAugmentingPath> find_aug_path(const Graph& g, const Matching& m, std::size_t max_len) {
  const auto free = m.unmatched();
  if (free.size() < 2 || max_len < 2) return std::nullopt;
  if (two_coloring(g)) {
    std::optional<MatchingAugmentingPath> best;
    for (Vertex s : free) {
      const std::size_t limit = best ? best->length() : max_len;
      auto p = bfs_from(g, m, s, limit);
      if (p && (!best || p->length() < best->length())) best = std::move(p);
    }
    return best;
  }
  ExactLengthSearch search(g, m);
  for (std::size_t length = 1; length < max_len; length += 2) {
    for (Vertex s : free)
      if (auto p = search.run(s, length)) return p;
  }
  return std::nullopt;
}

Matching flip(const Graph& g, const Matching& m, const MatchingAugmentingPath& p) {
  if (!is_augmenting(g, m, p)) throw Error(ErrorCode::kNotAugmenting, "path is not M-augmenting");
  Matching out = m;
  const auto& v = p.vertices;
  for (std::size_t i = 1; i + 1 < v.size(); i += 2) out.unmatch(v[i]);
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) out.match(v[i], v[i + 1]);
  return out;
}

Matching stage_eliminate(const Graph& g, Matching m, std::size_t k, StageLog* log) {
  if (m.vertex_count() != g.vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument, "matching and graph disagree on the vertex count");
  }
  std::size_t flips = 0;
  while (auto p = find_aug_path(g, m, k)) {
    m = flip(g, m, *p);
    ++flips;
  }
  if (log != nullptr) *log = StageLog{k, flips, m.unmatched().size()};
  return m;
}

void write_matching(std::ostream& out, const Matching& m) {
  for (const Edge& e : m.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace locsim
