#include "locsim/brooks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "locsim/error.hpp"

namespace locsim {

double choose_epsilon(double C) {
  if (!(C > 0)) throw Error(ErrorCode::kInvalidArgument, "C must be positive");
  for (int j = 1024; j >= 1; --j) {
    const double eps = j / 1024.0;
    if (C * std::log2(1.0 + eps) < 1.0) return eps;
  }
  throw Error(ErrorCode::kNoRFound, "no grid epsilon satisfies C*log2(1+eps) < 1 for C = " + std::to_string(C));
}

std::size_t choose_R(const GrowthBound& f, double C, std::size_t scan_budget) {
  const double eps = choose_epsilon(C);
  for (std::size_t R = 0; R <= scan_budget; ++R) {
    if (f(R) < std::pow(1.0 + eps, static_cast<double>(R))) return R;
  }
  throw Error(ErrorCode::kNoRFound, "f(R) >= (1+eps)^R for every R <= " + std::to_string(scan_budget) +
                                        " (eps = " + std::to_string(eps) + ")");
}

namespace {

// Component of v in B(v, R) ∩ (dom ∪ {v}), in breadth-first order.
struct Component {
  std::vector<Vertex> order;
  std::unordered_map<Vertex, std::uint32_t> dist;

  bool contains(Vertex x) const { return dist.count(x) != 0; }
};

Component patch_component(const Graph& g, const PartialVertexColoring& c, Vertex v, std::size_t R) {
  // Distances are measured in g; membership additionally requires a path
  // through colored ball vertices.
  std::unordered_map<Vertex, std::uint32_t> gdist{{v, 0}};
  std::vector<Vertex> queue{v};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    const auto dx = gdist[x];
    if (dx >= R) continue;
    for (Vertex y : g.neighbors(x)) {
      if (gdist.emplace(y, dx + 1).second) queue.push_back(y);
    }
  }
  Component comp;
  comp.order.push_back(v);
  comp.dist.emplace(v, 0);
  for (std::size_t head = 0; head < comp.order.size(); ++head) {
    const Vertex x = comp.order[head];
    for (Vertex y : g.neighbors(x)) {
      if (c.colors[y] == kUncolored || comp.contains(y)) continue;
      auto it = gdist.find(y);
      if (it == gdist.end()) continue;
      comp.dist.emplace(y, it->second);
      comp.order.push_back(y);
    }
  }
  return comp;
}

class Recolor {
 public:
  Recolor(const Graph& g, const PartialVertexColoring& c) : g_(g), c_(c) {}

  std::uint64_t color(Vertex x) const {
    auto it = changed_.find(x);
    return it == changed_.end() ? c_.colors[x] : it->second;
  }
  void set(Vertex x, std::uint64_t col) { changed_[x] = col; }
  void unset(Vertex x) { changed_.erase(x); }
  void clear() { changed_.clear(); }

  bool proper_at_changes() const {
    for (const auto& [x, col] : changed_) {
      for (Vertex y : g_.neighbors(x)) {
        const auto cy = color(y);
        if (cy != kUncolored && cy == col) return false;
      }
    }
    return true;
  }

  RecoloringPatch to_patch(Vertex v, const Component& comp) const {
    RecoloringPatch p;
    p.newly_colored = v;
    for (const auto& [x, col] : changed_) {
      if (x != v && col == c_.colors[x]) continue;
      p.changed.emplace_back(x, col);
      p.radius = std::max<std::size_t>(p.radius, comp.dist.at(x));
    }
    std::sort(p.changed.begin(), p.changed.end());
    return p;
  }

 private:
  const Graph& g_;
  const PartialVertexColoring& c_;
  std::unordered_map<Vertex, std::uint64_t> changed_;
};

class ShiftSearch {
 public:
  ShiftSearch(const Graph& g, const PartialVertexColoring& c, const Component& comp, std::size_t delta,
              std::size_t budget)
      : g_(g), c_(c), comp_(comp), delta_(delta), budget_(budget), recolor_(g, c) {}

  std::optional<RecoloringPatch> run(Vertex v, std::size_t max_length) {
    for (std::size_t len = 1; len <= max_length && len < comp_.order.size(); ++len) {
      path_.assign(1, v);
      if (extend(len)) return recolor_.to_patch(v, comp_);
      if (nodes_ > budget_) break;
    }
    return std::nullopt;
  }

 private:
  bool on_path(Vertex x) const { return std::find(path_.begin(), path_.end(), x) != path_.end(); }

  // The tail's new color c(w) must avoid neighbors that can never join the
  // path, i.e. those outside the component.
  bool admissible(Vertex tail, Vertex w) const {
    const auto want = c_.colors[w];
    for (Vertex y : g_.neighbors(tail)) {
      if (y == w || comp_.contains(y)) continue;
      if (c_.colors[y] == want) return false;
    }
    return true;
  }

  bool finish() {
    const std::size_t k = path_.size() - 1;
    recolor_.clear();
    for (std::size_t i = 0; i < k; ++i) recolor_.set(path_[i], c_.colors[path_[i + 1]]);
    for (std::uint64_t gamma = 1; gamma <= delta_; ++gamma) {
      recolor_.set(path_[k], gamma);
      if (recolor_.proper_at_changes()) return true;
    }
    recolor_.clear();
    return false;
  }

  bool extend(std::size_t len) {
    if (++nodes_ > budget_) return false;
    if (path_.size() == len + 1) return finish();
    const Vertex tail = path_.back();
    for (Vertex w : g_.neighbors(tail)) {
      if (!comp_.contains(w) || on_path(w) || c_.colors[w] == kUncolored) continue;
      if (!admissible(tail, w)) continue;
      path_.push_back(w);
      if (extend(len)) return true;
      path_.pop_back();
    }
    return false;
  }

  const Graph& g_;
  const PartialVertexColoring& c_;
  const Component& comp_;
  std::size_t delta_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Vertex> path_;
  Recolor recolor_;
};

// Exhaustive recoloring of `vars` (v first) with everything else fixed.
class Backtrack {
 public:
  Backtrack(const Graph& g, const PartialVertexColoring& c, std::vector<Vertex> vars, std::size_t delta,
            std::size_t budget)
      : g_(g), c_(c), vars_(std::move(vars)), delta_(delta), budget_(budget), recolor_(g, c) {
    for (std::size_t i = 0; i < vars_.size(); ++i) index_.emplace(vars_[i], i);
  }

  enum class Outcome { kFound, kNone, kBudget };

  Outcome run() {
    if (assign(0)) return Outcome::kFound;
    return nodes_ > budget_ ? Outcome::kBudget : Outcome::kNone;
  }

  const Recolor& recolor() const { return recolor_; }

 private:
  bool fits(Vertex x, std::uint64_t col, std::size_t pos) const {
    for (Vertex y : g_.neighbors(x)) {
      auto it = index_.find(y);
      std::uint64_t cy;
      if (it == index_.end()) {
        cy = c_.colors[y];
      } else if (it->second < pos) {
        cy = recolor_.color(y);
      } else {
        continue;
      }
      if (cy == col) return false;
    }
    return true;
  }

  bool assign(std::size_t pos) {
    if (++nodes_ > budget_) return false;
    if (pos == vars_.size()) return true;
    const Vertex x = vars_[pos];
    const std::uint64_t original = c_.colors[x];
    auto attempt = [&](std::uint64_t col) {
      if (!fits(x, col, pos)) return false;
      recolor_.set(x, col);
      if (assign(pos + 1)) return true;
      recolor_.unset(x);
      return false;
    };
    if (original != kUncolored && original <= delta_ && attempt(original)) return true;
    for (std::uint64_t col = 1; col <= delta_; ++col) {
      if (col == original) continue;
      if (nodes_ > budget_) return false;
      if (attempt(col)) return true;
    }
    return false;
  }

  const Graph& g_;
  const PartialVertexColoring& c_;
  std::vector<Vertex> vars_;
  std::unordered_map<Vertex, std::size_t> index_;
  std::size_t delta_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  Recolor recolor_;
};

}  // namespace

RecoloringPatch find_augmenting_recoloring(const Graph& g, const PartialVertexColoring& c, Vertex v,
                                           std::size_t R, std::size_t delta, const PatchSearchOptions& options) {
  if (v >= g.vertex_count()) throw Error(ErrorCode::kInvalidArgument, "vertex out of range");
  if (c.colors[v] != kUncolored) throw Error(ErrorCode::kInvalidArgument, "vertex is already colored");

  std::vector<char> used(delta + 2, 0);
  for (Vertex y : g.neighbors(v))
    if (c.colors[y] != kUncolored && c.colors[y] <= delta) used[c.colors[y]] = 1;
  for (std::uint64_t col = 1; col <= delta; ++col) {
    if (!used[col]) return RecoloringPatch{v, {{v, col}}, 0};
  }

  const Component comp = patch_component(g, c, v, R);
  ShiftSearch shifts(g, c, comp, delta, options.node_budget);
  if (auto p = shifts.run(v, options.max_shift_length)) return *p;

  bool budget_hit = false;
  std::size_t previous_size = 0;
  for (std::size_t r = 1; r <= R; ++r) {
    std::vector<Vertex> vars;
    for (Vertex x : comp.order)
      if (comp.dist.at(x) <= r) vars.push_back(x);
    if (vars.size() == previous_size) {
      if (vars.size() == comp.order.size()) break;
      continue;
    }
    previous_size = vars.size();
    Backtrack bt(g, c, vars, delta, options.node_budget);
    const auto outcome = bt.run();
    if (outcome == Backtrack::Outcome::kFound) return bt.recolor().to_patch(v, comp);
    if (outcome == Backtrack::Outcome::kBudget) budget_hit = true;
    if (vars.size() == comp.order.size()) break;
  }
  throw Error(ErrorCode::kNoPatchInBall, "no recoloring of the radius-" + std::to_string(R) + " component of vertex " +
                                             std::to_string(v) + (budget_hit ? " within the search budget" : ""));
}

void apply_patch(const Graph& g, PartialVertexColoring& c, const RecoloringPatch& patch) {
  for (const auto& [x, col] : patch.changed) c.colors[x] = col;
  for (const auto& [x, col] : patch.changed) {
    if (col < 1 || col > c.palette_size) {
      throw Error(ErrorCode::kImproperInput, "patch color out of range at vertex " + std::to_string(x));
    }
    for (Vertex y : g.neighbors(x)) {
      if (c.colors[y] == col) {
        throw Error(ErrorCode::kImproperInput,
                    "patch makes edge " + std::to_string(x) + "-" + std::to_string(y) + " monochromatic");
      }
    }
  }
}

void check_no_big_clique(const Graph& g, std::size_t delta) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != delta) continue;
    const auto nb = g.neighbors(v);
    bool clique = true;
    for (std::size_t i = 0; i < nb.size() && clique; ++i)
      for (std::size_t j = i + 1; j < nb.size() && clique; ++j) clique = g.has_edge(nb[i], nb[j]);
    if (clique) {
      throw Error(ErrorCode::kKCliqueFound,
                  "vertex " + std::to_string(v) + " and its neighbors form K_" + std::to_string(delta + 1));
    }
  }
}

BrooksResult subexp_brooks(const Graph& g, const GrowthBound& f, double C, const BrooksOptions& options) {
  BrooksResult result;
  const std::size_t delta = options.delta == 0 ? g.max_degree() : options.delta;
  if (delta < g.max_degree()) throw Error(ErrorCode::kInvalidArgument, "declared delta below the maximum degree");
  if (delta < 3) throw Error(ErrorCode::kInvalidArgument, "subexp_brooks needs delta >= 3");
  check_no_big_clique(g, delta);

  result.delta = delta;
  result.epsilon = options.radius ? 0.0 : choose_epsilon(C);
  result.R = options.radius ? *options.radius : choose_R(f, C);
  const std::size_t R = result.R;
  const std::size_t D = 2 * R + 2;

  const GrowthCheck growth = check_growth(g, f, D);
  if (!growth.pass) {
    throw Error(ErrorCode::kGrowthViolated, "|B(" + std::to_string(growth.witness_vertex) + ", " +
                                                std::to_string(growth.witness_radius) +
                                                ")| = " + std::to_string(growth.witness_ball_size) +
                                                " reaches the growth bound");
  }

  const BigCount power_delta = boost::multiprecision::pow(BigCount(delta), static_cast<unsigned>(D));
  result.class_count = power_delta + 1;
  result.sweeps = result.class_count;
  const std::size_t declared = power_delta > std::numeric_limits<std::size_t>::max()
                                   ? std::numeric_limits<std::size_t>::max()
                                   : static_cast<std::size_t>(power_delta);

  const Graph pg = power(g, D);
  const IdAssignment ids = assign_ids(g, options.ids, options.c_exponent);
  const LocalAlgorithm greedy = distributed_greedy(Target::kVertex, declared, options.c_exponent);
  const RunResult classes = run_deterministic(pg, greedy, ids, EvalMode::kBatch);
  result.coloring_rounds = BigCount(classes.rounds_used) * D;

  std::map<std::uint64_t, std::vector<Vertex>> by_class;
  for (Vertex v = 0; v < g.vertex_count(); ++v) by_class[classes.outputs[v]].push_back(v);
  if (!by_class.empty() && BigCount(by_class.rbegin()->first) > result.class_count) {
    throw Error(ErrorCode::kImproperInput, "power-graph coloring exceeds its palette");
  }

  PartialVertexColoring c{std::vector<std::uint64_t>(g.vertex_count(), kUncolored), delta};
  std::vector<char> touched(g.vertex_count(), 0);
  for (const auto& [cls, members] : by_class) {
    SweepRecord rec;
    rec.class_index = cls;
    rec.class_size = members.size();
    std::vector<RecoloringPatch> patches;
    patches.reserve(members.size());
    for (Vertex v : members) patches.push_back(find_augmenting_recoloring(g, c, v, R, delta, options.patch));

    std::vector<Vertex> marked;
    for (const auto& p : patches) {
      rec.max_patch_radius = std::max(rec.max_patch_radius, p.radius);
      if (p.changed.size() > 1) ++rec.nontrivial_patches;
      for (const auto& [x, col] : p.changed) {
        if (touched[x]) rec.disjoint = false;
        touched[x] = 1;
        marked.push_back(x);
      }
    }
    for (Vertex x : marked) touched[x] = 0;
    rec.patches = patches.size();
    if (!rec.disjoint) {
      result.log.push_back(rec);
      throw Error(ErrorCode::kImproperInput, "patches of class " + std::to_string(cls) + " overlap");
    }
    for (const auto& p : patches) apply_patch(g, c, p);
    rec.proper_after = c.is_proper_on_domain(g);
    result.log.push_back(rec);
  }

  result.colors = std::move(c.colors);
  result.total_rounds = result.coloring_rounds + result.sweeps * (2 * R + 1);
  return result;
}

std::vector<std::uint64_t> sequential_brooks(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  const std::size_t delta = g.max_degree();
  check_no_big_clique(g, delta);

  if (delta <= 2) {
    std::vector<std::uint64_t> side(n, kUncolored);
    for (Vertex s = 0; s < n; ++s) {
      if (side[s] != kUncolored) continue;
      side[s] = 1;
      std::vector<Vertex> queue{s};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex x = queue[head];
        for (Vertex y : g.neighbors(x)) {
          if (side[y] == kUncolored) {
            side[y] = 3 - side[x];
            queue.push_back(y);
          } else if (side[y] == side[x]) {
            throw Error(ErrorCode::kOddCycleWithDeltaTwo, "odd cycle through vertex " + std::to_string(x));
          }
        }
      }
    }
    return side;
  }

  PartialVertexColoring c{std::vector<std::uint64_t>(n, kUncolored), delta};
  for (Vertex v = 0; v < n; ++v) apply_patch(g, c, find_augmenting_recoloring(g, c, v, n, delta));
  return c.colors;
}

}  // namespace locsim
