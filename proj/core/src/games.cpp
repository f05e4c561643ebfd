#include "locsim/games.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>
#include <unordered_map>

#include "locsim/error.hpp"

namespace locsim {

TreeFragment TreeFragment::regular(std::size_t delta, std::size_t depth) {
  TreeFragment t;
  t.delta = delta;
  t.depth = depth;
  t.parent.push_back(kNoParent);
  t.children.emplace_back();
  t.edge_color.push_back(0);
  t.level.push_back(0);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t.level[x] == depth) continue;
    for (std::uint32_t c = 1; c <= delta; ++c) {
      if (c == t.edge_color[x]) continue;
      const std::size_t y = t.size();
      t.parent.push_back(x);
      t.children.emplace_back();
      t.edge_color.push_back(c);
      t.level.push_back(t.level[x] + 1);
      t.children[x].push_back(y);
    }
  }
  return t;
}

namespace {

// Subtree encoding used for ball keys. `nbrs(x)` lists the tree neighbors of
// x in edge-color order; `from` is excluded.
template <class Neighbors, class Label, class Color>
std::string encode(const Neighbors& nbrs, const Label& label, const Color& color, std::size_t x, std::size_t from,
                   std::size_t remaining, bool edge_colored) {
  std::string s = label(x);
  if (remaining == 0) return s;
  std::vector<std::string> parts;
  for (std::size_t y : nbrs(x)) {
    if (y == from) continue;
    std::string child = encode(nbrs, label, color, y, x, remaining - 1, edge_colored);
    if (edge_colored) child = std::to_string(color(x, y)) + ':' + child;
    parts.push_back(std::move(child));
  }
  if (!edge_colored) std::sort(parts.begin(), parts.end());
  s += '(';
  for (const auto& p : parts) s += p + ',';
  s += ')';
  return s;
}

std::vector<std::vector<std::size_t>> tree_adjacency(const TreeFragment& t) {
  std::vector<std::vector<std::size_t>> adj(t.size());
  for (std::size_t x = 1; x < t.size(); ++x) {
    adj[x].push_back(t.parent[x]);
    adj[t.parent[x]].push_back(x);
  }
  return adj;
}

}  // namespace

std::string ball_key(const TreeFragment& tree, std::span<const std::uint64_t> labels, std::size_t radius,
                     bool edge_colored) {
  auto nbrs = [&](std::size_t x) -> const std::vector<std::size_t>& { return tree.children[x]; };
  auto label = [&](std::size_t x) { return std::to_string(labels[x]); };
  auto color = [&](std::size_t, std::size_t y) { return tree.edge_color[y]; };
  return encode(nbrs, label, color, 0, kNoParent, std::min(radius, tree.depth), edge_colored);
}

GlocalAlgorithm GlocalAlgorithm::zero_round(std::vector<std::uint64_t> coloring) {
  GlocalAlgorithm a;
  a.evaluate = [c = std::move(coloring)](const TreeFragment&,
                                         std::span<const std::uint64_t> labels) -> std::optional<std::uint64_t> {
    if (labels[0] >= c.size()) return std::nullopt;
    return c[labels[0]];
  };
  return a;
}

GlocalAlgorithm GlocalAlgorithm::constant(std::uint64_t color) {
  GlocalAlgorithm a;
  a.evaluate = [color](const TreeFragment&, std::span<const std::uint64_t>) -> std::optional<std::uint64_t> {
    return color;
  };
  return a;
}

GlocalAlgorithm GlocalAlgorithm::from_table(std::size_t radius, std::map<std::string, std::uint64_t> table,
                                            bool edge_colored) {
  GlocalAlgorithm a;
  a.radius = radius;
  a.evaluate = [radius, edge_colored, t = std::move(table)](
                   const TreeFragment& tree, std::span<const std::uint64_t> labels) -> std::optional<std::uint64_t> {
    const auto it = t.find(ball_key(tree, labels, radius, edge_colored));
    if (it == t.end()) return std::nullopt;
    return it->second;
  };
  return a;
}

std::vector<std::size_t> game_schedule(const TreeFragment& tree, std::uint64_t forbidden) {
  // side[x]: true when x lies in I's subtree.
  std::vector<char> side(tree.size(), 0);
  for (std::size_t x = 1; x < tree.size(); ++x) {
    side[x] = tree.parent[x] == 0 ? tree.edge_color[x] == forbidden : side[tree.parent[x]];
  }
  std::vector<std::size_t> order;
  for (std::size_t n = 1; n <= tree.depth; ++n) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t x = 1; x < tree.size(); ++x) {
        if (tree.level[x] == n && side[x] == (pass == 0)) order.push_back(x);
      }
    }
  }
  return order;
}

namespace detail {

class GameSolver {
 public:
  explicit GameSolver(const GameSpec& spec)
      : spec_(spec), tree_(TreeFragment::regular(spec.delta, spec.rounds)) {
    validate();
    schedule_ = game_schedule(tree_, spec_.forbidden);
    for (std::size_t x : schedule_) {
      std::size_t a = x;
      while (tree_.parent[a] != 0) a = tree_.parent[a];
      owner_.push_back(tree_.edge_color[a] == spec_.forbidden ? Player::kI : Player::kII);
    }
    labels_.assign(tree_.size(), -1);
    used_.assign(spec_.target.graph.vertex_count(), 0);
    labels_[0] = spec_.start;
    used_[spec_.start] = 1;
  }

  bool i_wins() { return value(0); }
  std::size_t positions() const { return positions_; }

  std::optional<Vertex> move_at(const GamePosition& p, Player winner) {
    if (p.cursor >= schedule_.size() || owner_[p.cursor] != winner) return std::nullopt;
    load(p);
    const std::size_t x = schedule_[p.cursor];
    for (Vertex w : legal(x)) {
      set(x, w);
      const bool i = value(p.cursor + 1);
      unset(x, w);
      if (i == (winner == Player::kI)) return w;
    }
    return std::nullopt;
  }

  bool audit(Player winner, const Winner& w) {
    GamePosition p;
    p.labels.assign(tree_.size(), std::nullopt);
    p.labels[0] = spec_.start;
    return audit_from(p, winner, w);
  }

 private:
  bool labeled() const { return spec_.variant != GameVariant::kPlain; }

  void validate() const {
    const auto& h = spec_.target;
    if (spec_.delta == 0) throw Error(ErrorCode::kInvalidArgument, "game needs delta >= 1");
    if (spec_.start >= h.graph.vertex_count()) throw Error(ErrorCode::kInvalidArgument, "start label not in H");
    if (spec_.forbidden < 1 || spec_.forbidden > spec_.delta) {
      throw Error(ErrorCode::kInvalidArgument, "forbidden color outside 1..delta");
    }
    if (!spec_.alg.evaluate) throw Error(ErrorCode::kInvalidArgument, "game has no algorithm");
    if (labeled() && (h.label_count != spec_.delta || !h.is_nice())) {
      throw Error(ErrorCode::kInvalidArgument, "labeled games need a nice delta-edge-labeling of H");
    }
    if (!spec_.ids.empty()) {
      if (spec_.ids.size() != h.graph.vertex_count()) {
        throw Error(ErrorCode::kInvalidArgument, "id map size differs from |V(H)|");
      }
      std::vector<std::uint64_t> sorted = spec_.ids;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::kInvalidArgument, "id map is not injective");
      }
    }
  }

  std::vector<Vertex> legal(std::size_t x) const {
    const auto& h = spec_.target;
    const Vertex hp = static_cast<Vertex>(labels_[tree_.parent[x]]);
    std::vector<Vertex> out;
    for (EdgeId e : h.graph.incident_edges(hp)) {
      const Vertex w = h.graph.edge(e).other(hp);
      if (labeled() && h.edge_labels[e] != tree_.edge_color[x]) continue;
      if (spec_.variant == GameVariant::kIdLabels && used_[w]) continue;
      out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void set(std::size_t x, Vertex w) {
    labels_[x] = w;
    ++used_[w];
  }
  void unset(std::size_t x, Vertex w) {
    labels_[x] = -1;
    --used_[w];
  }

  void load(const GamePosition& p) {
    std::fill(used_.begin(), used_.end(), 0);
    for (std::size_t x = 0; x < tree_.size(); ++x) {
      labels_[x] = p.labels[x] ? static_cast<std::int64_t>(*p.labels[x]) : -1;
      if (p.labels[x]) ++used_[*p.labels[x]];
    }
  }

  bool terminal_i_wins() const {
    std::vector<std::uint64_t> seen(tree_.size());
    for (std::size_t x = 0; x < tree_.size(); ++x) {
      const auto h = static_cast<std::size_t>(labels_[x]);
      seen[x] = spec_.ids.empty() ? h : spec_.ids[h];
    }
    const auto out = spec_.alg.evaluate(tree_, seen);
    if (!out) throw Error(ErrorCode::kAlgorithmUndefinedAtTerminal, "algorithm has no output on a terminal ball");
    return *out != spec_.forbidden;
  }

  std::string key() const {
    if (labeled()) {
      std::string s;
      for (std::int64_t l : labels_) s += std::to_string(l) + ',';
      return s;
    }
    auto nbrs = [&](std::size_t x) -> const std::vector<std::size_t>& { return tree_.children[x]; };
    auto label = [&](std::size_t x) { return labels_[x] < 0 ? std::string("?") : std::to_string(labels_[x]); };
    auto color = [](std::size_t, std::size_t) { return 0u; };
    if (tree_.depth == 0) return std::to_string(labels_[0]);
    const std::size_t mine = tree_.children[0][spec_.forbidden - 1];
    std::string s = std::to_string(labels_[0]) + '{' + encode(nbrs, label, color, mine, 0, tree_.depth, false) + '|';
    std::vector<std::string> rest;
    for (std::size_t c : tree_.children[0]) {
      if (c != mine) rest.push_back(encode(nbrs, label, color, c, 0, tree_.depth, false));
    }
    std::sort(rest.begin(), rest.end());
    for (const auto& r : rest) s += r + ',';
    return s + '}';
  }

  bool value(std::size_t cursor) {
    const std::string k = key();
    if (const auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (++positions_ > spec_.budget) throw Error(ErrorCode::kBudgetExhausted, "game exceeds the position budget");
    if (cursor == schedule_.size()) {
      const bool i = terminal_i_wins();
      memo_.emplace(k, i);
      return i;
    }
    const std::size_t x = schedule_[cursor];
    const Player mover = owner_[cursor];
    bool result = mover == Player::kII;  // a player with no move loses
    for (Vertex w : legal(x)) {
      set(x, w);
      const bool child = value(cursor + 1);
      unset(x, w);
      if (mover == Player::kI && child) {
        result = true;
        break;
      }
      if (mover == Player::kII && !child) {
        result = false;
        break;
      }
    }
    memo_.emplace(k, result);
    return result;
  }

  bool audit_from(GamePosition& p, Player winner, const Winner& w) {
    if (p.cursor == schedule_.size()) {
      load(p);
      return terminal_i_wins() == (winner == Player::kI);
    }
    const std::size_t x = schedule_[p.cursor];
    if (owner_[p.cursor] == winner) {
      const auto m = w.move(p);
      if (!m) return false;
      load(p);
      const auto options = legal(x);
      if (std::find(options.begin(), options.end(), *m) == options.end()) return false;
      p.labels[x] = *m;
      ++p.cursor;
      const bool ok = audit_from(p, winner, w);
      --p.cursor;
      p.labels[x] = std::nullopt;
      return ok;
    }
    load(p);
    const auto options = legal(x);
    for (Vertex m : options) {
      p.labels[x] = m;
      ++p.cursor;
      const bool ok = audit_from(p, winner, w);
      --p.cursor;
      p.labels[x] = std::nullopt;
      if (!ok) return false;
    }
    return true;
  }

  GameSpec spec_;
  TreeFragment tree_;
  std::vector<std::size_t> schedule_;
  std::vector<Player> owner_;
  std::vector<std::int64_t> labels_;
  std::vector<int> used_;
  std::unordered_map<std::string, bool> memo_;
  std::size_t positions_ = 0;
};

}  // namespace detail

std::optional<Vertex> Winner::move(const GamePosition& p) const {
  if (!solver) return std::nullopt;
  return solver->move_at(p, who);
}

Winner solve_game(const GameSpec& spec) {
  Winner w;
  w.solver = std::make_shared<detail::GameSolver>(spec);
  w.who = w.solver->i_wins() ? Player::kI : Player::kII;
  w.positions = w.solver->positions();
  return w;
}

bool audit_strategy(const GameSpec& spec, const Winner& winner) {
  detail::GameSolver referee(spec);
  return referee.audit(winner.who, winner);
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

GameReport game_report(const EdgeLabeledGraph& h, std::size_t delta, std::size_t rounds, const GlocalAlgorithm& alg,
                       GameVariant variant) {
  const std::size_t n = h.graph.vertex_count();
  GameReport report;
  report.winners.assign(n, std::vector<Player>(delta, Player::kI));
  parallel_for(n * delta, [&](std::size_t job) {
    GameSpec spec{h, delta, rounds, static_cast<Vertex>(job / delta), job % delta + 1, alg, variant, {}, 5'000'000};
    report.winners[job / delta][job % delta] = solve_game(spec).who;
  });
  std::vector<std::uint64_t> c(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto it = std::find(report.winners[v].begin(), report.winners[v].end(), Player::kII);
    if (it == report.winners[v].end()) return report;
    c[v] = static_cast<std::uint64_t>(it - report.winners[v].begin()) + 1;
  }
  report.coloring = std::move(c);
  return report;
}

std::vector<std::uint64_t> extract_coloring(const EdgeLabeledGraph& h, std::size_t delta, std::size_t rounds,
                                            const GlocalAlgorithm& alg, GameVariant variant) {
  auto report = game_report(h, delta, rounds, alg, variant);
  if (!report.coloring) {
    for (std::size_t v = 0; v < report.winners.size(); ++v) {
      if (std::find(report.winners[v].begin(), report.winners[v].end(), Player::kII) == report.winners[v].end()) {
        throw Error(ErrorCode::kNoWinningIndex, "I wins every game at vertex " + std::to_string(v));
      }
    }
  }
  return *report.coloring;
}

std::vector<std::uint64_t> extract_coloring(const Graph& h, std::size_t delta, std::size_t rounds,
                                            const GlocalAlgorithm& alg) {
  return extract_coloring(EdgeLabeledGraph{h, {}, 0}, delta, rounds, alg, GameVariant::kPlain);
}

void write_game_report(std::ostream& out, const GameReport& report) {
  nlohmann::json j;
  j["winners"] = nlohmann::json::array();
  for (const auto& row : report.winners) {
    auto r = nlohmann::json::array();
    for (Player p : row) r.push_back(p == Player::kI ? "I" : "II");
    j["winners"].push_back(r);
  }
  j["coloring"] = report.coloring ? nlohmann::json(*report.coloring) : nlohmann::json(nullptr);
  out << j.dump() << '\n';
}

ChiElResult chi_el_decide(const EdgeLabeledGraph& h, std::size_t delta, std::size_t budget) {
  const std::size_t n = h.graph.vertex_count();
  if (delta > 64) throw Error(ErrorCode::kInvalidArgument, "chi_el_decide supports delta <= 64");
  if (n == 0) return {true, {}};
  if (delta == 0) return {false, {}};
  const std::uint64_t full = delta == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << delta) - 1;
  std::vector<std::uint64_t> domain(n, full);
  std::vector<std::uint64_t> color(n, 0);
  std::size_t nodes = 0;

  auto solve = [&](auto&& self, std::size_t assigned) -> bool {
    if (assigned == n) return true;
    if (++nodes > budget) throw Error(ErrorCode::kBudgetExhausted, "chi_el search exceeds its budget");
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (color[v] == 0 && (pick == n || std::popcount(domain[v]) < std::popcount(domain[pick]))) pick = v;
    }
    const auto v = static_cast<Vertex>(pick);
    for (std::uint64_t a = 1; a <= delta; ++a) {
      if (!(domain[v] >> (a - 1) & 1)) continue;
      color[v] = a;
      std::vector<Vertex> trimmed;
      bool dead = false;
      for (EdgeId e : h.graph.incident_edges(v)) {
        if (h.edge_labels[e] != a) continue;
        const Vertex w = h.graph.edge(e).other(v);
        if (color[w] != 0 || !(domain[w] >> (a - 1) & 1)) continue;
        domain[w] &= ~(std::uint64_t{1} << (a - 1));
        trimmed.push_back(w);
        if (domain[w] == 0) dead = true;
      }
      if (!dead && self(self, assigned + 1)) return true;
      for (Vertex w : trimmed) domain[w] |= std::uint64_t{1} << (a - 1);
      color[v] = 0;
    }
    return false;
  };
  if (!solve(solve, 0)) return {false, {}};
  return {true, color};
}

namespace {

// The union of the radius-r balls around the two ends x (vertex 0) and y
// (vertex 1) of a tree edge.
struct EdgeBall {
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> adj;

  EdgeBall(std::size_t delta, std::size_t r) {
    parent = {kNoParent, 0};
    std::vector<std::size_t> dist{0, 0};
    adj.assign(2, {});
    adj[0].push_back(1);
    adj[1].push_back(0);
    for (std::size_t x = 0; x < parent.size(); ++x) {
      if (dist[x] == r) continue;
      const std::size_t kids = delta - 1;
      for (std::size_t k = 0; k < kids; ++k) {
        const std::size_t y = parent.size();
        parent.push_back(x);
        dist.push_back(dist[x] + 1);
        adj.emplace_back();
        adj[x].push_back(y);
        adj[y].push_back(x);
      }
    }
  }
};

}  // namespace

std::optional<GlocalAlgorithm> glocal_search(const Graph& h, std::size_t delta, std::size_t rounds,
                                             std::size_t budget) {
  if (delta == 0) throw Error(ErrorCode::kInvalidArgument, "glocal_search needs delta >= 1");
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> cons;
  auto var = [&](const std::string& k) {
    const auto [it, fresh] = index.emplace(k, index.size());
    if (fresh) cons.emplace_back();
    return it->second;
  };
  if (rounds == 0) {
    for (Vertex v = 0; v < h.vertex_count(); ++v) var(std::to_string(v));
  }

  const EdgeBall eb(delta, rounds);
  std::vector<std::int64_t> lab(eb.parent.size(), -1);
  auto nbrs = [&](std::size_t x) -> const std::vector<std::size_t>& { return eb.adj[x]; };
  auto label = [&](std::size_t x) { return std::to_string(lab[x]); };
  auto color = [](std::size_t, std::size_t) { return 0u; };
  std::size_t steps = 0;
  bool self_loop = false;
  auto fill = [&](auto&& self, std::size_t x) -> void {
    if (self_loop) return;
    if (++steps > budget) throw Error(ErrorCode::kBudgetExhausted, "ball enumeration exceeds its budget");
    if (x == eb.parent.size()) {
      const std::size_t a = var(encode(nbrs, label, color, 0, kNoParent, rounds, false));
      const std::size_t b = var(encode(nbrs, label, color, 1, kNoParent, rounds, false));
      if (a == b) {
        self_loop = true;
        return;
      }
      cons[a].push_back(b);
      cons[b].push_back(a);
      return;
    }
    const auto hp = static_cast<Vertex>(lab[eb.parent[x]]);
    for (Vertex w : h.neighbors(hp)) {
      lab[x] = w;
      self(self, x + 1);
    }
    lab[x] = -1;
  };
  for (Vertex a = 0; a < h.vertex_count() && !self_loop; ++a) {
    lab[0] = a;
    fill(fill, 1);
  }
  if (self_loop) return std::nullopt;
  for (auto& c : cons) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  // DSATUR backtracking; a new color is opened only as the next unused one.
  const std::size_t m = cons.size();
  std::vector<std::uint64_t> col(m, 0);
  std::vector<std::vector<int>> seen(m, std::vector<int>(delta + 1, 0));
  std::vector<std::size_t> sat(m, 0);
  auto paint = [&](std::size_t v, std::uint64_t c, int sign) {
    col[v] = sign > 0 ? c : 0;
    for (std::size_t w : cons[v]) {
      int& s = seen[w][c];
      if (sign > 0 && s++ == 0) ++sat[w];
      if (sign < 0 && --s == 0) --sat[w];
    }
  };
  std::size_t nodes = 0;
  auto search = [&](auto&& self, std::size_t done, std::uint64_t used) -> bool {
    if (done == m) return true;
    if (++nodes > budget) throw Error(ErrorCode::kBudgetExhausted, "glocal coloring search exceeds its budget");
    std::size_t v = m;
    for (std::size_t u = 0; u < m; ++u) {
      if (col[u] != 0) continue;
      if (v == m || sat[u] > sat[v] || (sat[u] == sat[v] && cons[u].size() > cons[v].size())) v = u;
    }
    const std::uint64_t top = std::min<std::uint64_t>(delta, used + 1);
    for (std::uint64_t c = 1; c <= top; ++c) {
      if (seen[v][c] != 0) continue;
      paint(v, c, 1);
      if (self(self, done + 1, std::max(used, c))) return true;
      paint(v, c, -1);
    }
    return false;
  };
  if (!search(search, 0, 0)) return std::nullopt;
  std::map<std::string, std::uint64_t> table;
  for (const auto& [k, v] : index) table.emplace(k, col[v]);
  return GlocalAlgorithm::from_table(rounds, std::move(table), false);
}

bool glocal_exists(const Graph& h, std::size_t delta, std::size_t rounds, std::size_t budget) {
  return glocal_search(h, delta, rounds, budget).has_value();
}

std::optional<IdGraphCertificate> id_graph_search(std::size_t n, std::size_t delta_labels, std::size_t d,
                                                  std::size_t girth_min, std::uint64_t seed, std::size_t retries) {
  if (delta_labels == 0 || d == 0 || d >= n || (n * d) % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "id_graph_search needs n*d even and 1 <= d < n");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= retries; ++attempt) {
    std::vector<Graph> parts;
    try {
      for (std::size_t j = 0; j < delta_labels; ++j) {
        FamilySpec s;
        s.family = Family::kRandomRegular;
        s.n = n;
        s.degree = d;
        s.seed = rng();
        parts.push_back(gen_graph(s));
      }
      EdgeLabeledGraph h = union_labeled(parts);
      const auto g = girth(h.graph);
      if (g && *g <= girth_min) continue;
      if (chi_el_decide(h, delta_labels).colorable) continue;
      return IdGraphCertificate{std::move(h), g, attempt};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEdgeCollision && e.code() != ErrorCode::kRetryBudgetExhausted) throw;
    }
  }
  return std::nullopt;
}

void write_certificate(std::ostream& out, const IdGraphCertificate& cert) {
  write_graph(out, cert.graph);
  out << "girth " << (cert.girth ? std::to_string(*cert.girth) : std::string("inf")) << '\n';
  out << "chi_el_exceeds_delta true\n";
  out << "attempts " << cert.attempts << '\n';
}

bool check_local_injectivity(const TreeFragment& tree, std::span<const Vertex> labeling, const EdgeLabeledGraph& h,
                             std::size_t k) {
  if (labeling.size() != tree.size()) throw Error(ErrorCode::kInvalidArgument, "labeling size differs from fragment");
  for (std::size_t x = 0; x < tree.size(); ++x) {
    if (labeling[x] >= h.graph.vertex_count()) throw Error(ErrorCode::kNotAHomomorphism, "label outside V(H)");
  }
  for (std::size_t x = 1; x < tree.size(); ++x) {
    const Vertex a = labeling[tree.parent[x]];
    const Vertex b = labeling[x];
    if (!h.graph.has_edge(a, b) || (h.label_count > 0 && h.label(a, b) != tree.edge_color[x])) {
      throw Error(ErrorCode::kNotAHomomorphism,
                  "fragment edge to vertex " + std::to_string(x) + " does not map to a matching edge of H");
    }
  }
  const auto adj = tree_adjacency(tree);
  std::vector<std::size_t> dist(tree.size());
  for (std::size_t s = 0; s < tree.size(); ++s) {
    std::fill(dist.begin(), dist.end(), kNoParent);
    std::vector<std::size_t> seen{s};
    dist[s] = 0;
    for (std::size_t q = 0; q < seen.size(); ++q) {
      const std::size_t x = seen[q];
      if (dist[x] == k + 1) continue;
      for (std::size_t y : adj[x]) {
        if (dist[y] != kNoParent) continue;
        dist[y] = dist[x] + 1;
        seen.push_back(y);
      }
    }
    std::vector<Vertex> labels;
    for (std::size_t x : seen) labels.push_back(labeling[x]);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

}  // namespace locsim
