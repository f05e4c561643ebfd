#include "locsim/vizing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "locsim/error.hpp"

namespace locsim {

PartialEdgeColoring::PartialEdgeColoring(const Graph& g, std::optional<std::uint64_t> palette)
    : g_(&g),
      palette_(palette.value_or(g.max_degree() + 1)),
      colors_(g.edge_count(), 0),
      slot_(g.vertex_count() * (palette_ + 1), kNoEdge) {
  if (palette_ == 0) throw Error(ErrorCode::kInvalidArgument, "edge palette must be nonempty");
}

PartialEdgeColoring::PartialEdgeColoring(const Graph& g, std::vector<std::uint64_t> colors,
                                         std::optional<std::uint64_t> palette)
    : PartialEdgeColoring(g, palette) {
  if (colors.size() != g.edge_count()) {
    throw Error(ErrorCode::kImproperInput, "edge coloring has " + std::to_string(colors.size()) +
                                               " entries for " + std::to_string(g.edge_count()) + " edges");
  }
  for (EdgeId e = 0; e < colors.size(); ++e) set(e, colors[e]);
}

std::vector<EdgeId> PartialEdgeColoring::uncolored() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < colors_.size(); ++e)
    if (colors_[e] == 0) out.push_back(e);
  return out;
}

std::vector<std::uint64_t> PartialEdgeColoring::missing(Vertex v) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c <= palette_; ++c)
    if (is_missing(v, c)) out.push_back(c);
  return out;
}

std::uint64_t PartialEdgeColoring::least_missing(Vertex v) const {
  for (std::uint64_t c = 1; c <= palette_; ++c)
    if (is_missing(v, c)) return c;
  return 0;
}

std::uint64_t PartialEdgeColoring::least_common_missing(Vertex u, Vertex v) const {
  for (std::uint64_t c = 1; c <= palette_; ++c)
    if (is_missing(u, c) && is_missing(v, c)) return c;
  return 0;
}

void PartialEdgeColoring::write(EdgeId e, std::uint64_t c) {
  const Edge& ed = g_->edge(e);
  if (colors_[e] != 0) {
    slot(ed.u, colors_[e]) = kNoEdge;
    slot(ed.v, colors_[e]) = kNoEdge;
    --colored_;
  }
  colors_[e] = c;
  if (c != 0) {
    slot(ed.u, c) = e;
    slot(ed.v, c) = e;
    ++colored_;
  }
}

void PartialEdgeColoring::set(EdgeId e, std::uint64_t c) {
  if (c > palette_) {
    throw Error(ErrorCode::kImproperInput,
                "color " + std::to_string(c) + " outside palette 1.." + std::to_string(palette_));
  }
  const Edge& ed = g_->edge(e);
  if (c != 0) {
    for (Vertex w : {ed.u, ed.v}) {
      const EdgeId holder = at(w, c);
      if (holder != kNoEdge && holder != e) {
        throw Error(ErrorCode::kImproperInput, "color " + std::to_string(c) + " already used at vertex " +
                                                   std::to_string(w));
      }
    }
  }
  write(e, c);
}

bool PartialEdgeColoring::is_proper() const {
  std::vector<std::uint64_t> seen;
  for (Vertex v = 0; v < g_->vertex_count(); ++v) {
    seen.clear();
    for (EdgeId e : g_->incident_edges(v))
      if (colors_[e] != 0) seen.push_back(colors_[e]);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

bool Chain::edge_injective() const {
  std::vector<EdgeId> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool Chain::connected(const Graph& g) const {
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Edge& a = g.edge(edges[i]);
    const Edge& b = g.edge(edges[i + 1]);
    if (!b.contains(a.u) && !b.contains(a.v)) return false;
  }
  return true;
}

Chain Chain::reversed() const { return Chain{{edges.rbegin(), edges.rend()}}; }

Chain Chain::operator+(const Chain& tail) const {
  Chain out = *this;
  out.edges.insert(out.edges.end(), tail.edges.begin(), tail.edges.end());
  return out;
}

AlternatingPath AlternatingPath::prefix(std::size_t t) const {
  AlternatingPath out = *this;
  if (t < edges.length()) {
    out.edges.edges.resize(t);
    out.vertices.resize(t + 1);
    out.truncated = true;
  }
  return out;
}

namespace {

// Colors of a chain after its shift, validated against the rest of the state.
struct ShiftPlan {
  std::vector<std::uint64_t> after;  // parallel to the chain
  std::vector<std::pair<EdgeId, std::uint64_t>> changed;  // sorted by edge
  std::optional<ErrorCode> error;
  std::string why;

  std::uint64_t color_after(const PartialEdgeColoring& state, EdgeId f) const {
    const auto it = std::lower_bound(changed.begin(), changed.end(), std::pair<EdgeId, std::uint64_t>{f, 0});
    return it != changed.end() && it->first == f ? it->second : state.color(f);
  }
};

ShiftPlan plan_shift(const PartialEdgeColoring& state, const Chain& p) {
  const Graph& g = state.graph();
  ShiftPlan plan;
  auto fail = [&](ErrorCode code, std::string why) {
    plan.error = code;
    plan.why = std::move(why);
    return plan;
  };
  if (p.edges.empty()) return fail(ErrorCode::kNotShiftable, "empty chain");
  if (!p.connected(g)) return fail(ErrorCode::kNotShiftable, "consecutive chain edges do not meet");
  if (!p.edge_injective()) return fail(ErrorCode::kNotShiftable, "chain repeats an edge");
  if (state.is_colored(p.edges.front())) return fail(ErrorCode::kNotShiftable, "first chain edge is colored");
  for (std::size_t i = 1; i < p.length(); ++i) {
    if (!state.is_colored(p.edges[i])) {
      return fail(ErrorCode::kNotShiftable, "chain edge " + std::to_string(i) + " is uncolored");
    }
  }
  plan.after.resize(p.length(), 0);
  for (std::size_t i = 0; i + 1 < p.length(); ++i) plan.after[i] = state.color(p.edges[i + 1]);

  for (std::size_t i = 0; i < p.length(); ++i) plan.changed.emplace_back(p.edges[i], plan.after[i]);
  std::sort(plan.changed.begin(), plan.changed.end());
  std::vector<std::uint64_t> seen;
  for (EdgeId e : p.edges) {
    for (Vertex w : {g.edge(e).u, g.edge(e).v}) {
      seen.clear();
      for (EdgeId f : g.incident_edges(w))
        if (const auto c = plan.color_after(state, f); c != 0) seen.push_back(c);
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        return fail(ErrorCode::kImproperShift, "shift repeats a color at vertex " + std::to_string(w));
      }
    }
  }
  return plan;
}

// Least color missing at both ends of the chain's last edge after the shift.
std::uint64_t common_missing_after(const PartialEdgeColoring& state, const Chain& p, const ShiftPlan& plan) {
  const Graph& g = state.graph();
  const Edge& last = g.edge(p.edges.back());
  std::vector<bool> used(state.palette() + 1, false);
  for (Vertex w : {last.u, last.v})
    for (EdgeId f : g.incident_edges(w)) used[plan.color_after(state, f)] = true;
  for (std::uint64_t c = 1; c <= state.palette(); ++c)
    if (!used[c]) return c;
  return 0;
}

void apply_plan(PartialEdgeColoring& state, const Chain& p, const ShiftPlan& plan) {
  for (EdgeId e : p.edges) state.set(e, 0);
  for (std::size_t i = 0; i < p.length(); ++i) state.set(p.edges[i], plan.after[i]);
}

// The state as it would look after shifting a short chain of edges at one
// vertex, without copying it.
class Overlay {
 public:
  Overlay(const PartialEdgeColoring& state, const Chain& p) : state_(state) {
    for (std::size_t i = 0; i < p.length(); ++i)
      changed_.emplace_back(p.edges[i], i + 1 < p.length() ? state.color(p.edges[i + 1]) : 0);
  }

  std::uint64_t color(EdgeId f) const {
    for (const auto& [e, c] : changed_)
      if (e == f) return c;
    return state_.color(f);
  }

  EdgeId at(Vertex w, std::uint64_t c) const {
    const Graph& g = state_.graph();
    for (const auto& [e, col] : changed_)
      if (col == c && g.edge(e).contains(w)) return e;
    const EdgeId base = state_.at(w, c);
    return base != kNoEdge && color(base) == c ? base : kNoEdge;
  }

 private:
  const PartialEdgeColoring& state_;
  std::vector<std::pair<EdgeId, std::uint64_t>> changed_;
};

template <typename View>
AlternatingPath walk(const View& view, const Graph& g, Vertex x, std::uint64_t alpha, std::uint64_t beta) {
  AlternatingPath path;
  path.start = x;
  path.alpha = alpha;
  path.beta = beta;
  path.vertices.push_back(x);
  std::unordered_set<EdgeId> used;
  Vertex at = x;
  std::uint64_t want = alpha;
  while (true) {
    const EdgeId f = view.at(at, want);
    if (f == kNoEdge || !used.insert(f).second) break;
    path.edges.edges.push_back(f);
    at = g.edge(f).other(at);
    path.vertices.push_back(at);
    want = want == alpha ? beta : alpha;
  }
  return path;
}

struct StateView {
  const PartialEdgeColoring& state;
  EdgeId at(Vertex w, std::uint64_t c) const { return state.at(w, c); }
};

void require_uncolored_at(const PartialEdgeColoring& state, Vertex x, EdgeId e) {
  if (e >= state.graph().edge_count() || state.is_colored(e)) {
    throw Error(ErrorCode::kInvalidArgument, "Vizing chains start at an uncolored edge");
  }
  if (!state.graph().edge(e).contains(x)) {
    throw Error(ErrorCode::kInvalidArgument, "pivot is not an endpoint of the uncolored edge");
  }
}

}  // namespace

void shift_in_place(PartialEdgeColoring& state, const Chain& p) {
  const ShiftPlan plan = plan_shift(state, p);
  if (plan.error) throw Error(*plan.error, plan.why);
  apply_plan(state, p, plan);
}

PartialEdgeColoring shift(const PartialEdgeColoring& state, const Chain& p) {
  PartialEdgeColoring out = state;
  shift_in_place(out, p);
  return out;
}

void unshift_in_place(PartialEdgeColoring& state, const Chain& p) { shift_in_place(state, p.reversed()); }

AlternatingPath alternating_path(const PartialEdgeColoring& state, Vertex x, std::uint64_t alpha,
                                 std::uint64_t beta) {
  if (alpha == beta) throw Error(ErrorCode::kInvalidArgument, "alternating path needs two distinct colors");
  return walk(StateView{state}, state.graph(), x, alpha, beta);
}

bool is_augmenting(const PartialEdgeColoring& state, const Chain& p) {
  const ShiftPlan plan = plan_shift(state, p);
  return !plan.error && common_missing_after(state, p, plan) != 0;
}

void augment_in_place(PartialEdgeColoring& state, const Chain& p) {
  const ShiftPlan plan = plan_shift(state, p);
  if (plan.error) throw Error(ErrorCode::kNotAugmenting, plan.why);
  const std::uint64_t c = common_missing_after(state, p, plan);
  if (c == 0) throw Error(ErrorCode::kNotAugmenting, "last chain edge has no common missing color");
  apply_plan(state, p, plan);
  state.set(p.edges.back(), c);
}

PartialEdgeColoring augment(const PartialEdgeColoring& state, const Chain& p) {
  PartialEdgeColoring out = state;
  augment_in_place(out, p);
  return out;
}

VizingChain build_vizing_chain(const PartialEdgeColoring& state, Vertex x, EdgeId e) {
  require_uncolored_at(state, x, e);
  const Graph& g = state.graph();
  VizingChain out;
  out.fan.pivot = x;
  std::vector<EdgeId>& fan = out.fan.edges.edges;
  std::vector<Vertex> tips;
  fan.push_back(e);
  tips.push_back(g.edge(e).other(x));
  std::uint64_t beta = 0;
  std::size_t j = 0;
  while (true) {
    const Vertex y = tips.back();
    if (state.least_common_missing(x, y) != 0) {
      out.path.start = y;
      out.path.vertices = {y};
      return out;
    }
    beta = state.least_missing(y);
    const EdgeId f = state.at(x, beta);
    const auto seen = std::find(fan.begin(), fan.end(), f);
    if (seen != fan.end()) {
      j = static_cast<std::size_t>(seen - fan.begin());
      break;
    }
    fan.push_back(f);
    tips.push_back(g.edge(f).other(x));
  }
  const std::uint64_t alpha = state.least_missing(x);
  const std::size_t k = fan.size() - 1;

  for (const std::size_t end : {k, j - 1}) {
    Fan candidate{x, Chain{{fan.begin(), fan.begin() + static_cast<std::ptrdiff_t>(end + 1)}}};
    const Overlay view(state, candidate.edges);
    AlternatingPath path = walk(view, g, tips[end], alpha, beta);
    const Chain whole = candidate.edges + path.edges;
    if (is_augmenting(state, whole)) return VizingChain{std::move(candidate), std::move(path)};
  }
  throw std::logic_error("no augmenting Vizing chain found for edge " + std::to_string(e));
}

std::vector<std::uint64_t> sequential_vizing(const Graph& g) {
  PartialEdgeColoring state(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    augment_in_place(state, build_vizing_chain(state, g.edge(e).u, e).chain());
  }
  return state.colors();
}

std::size_t MultiStepVizingChain::size() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.fan.edges.length() + s.path.edges.length();
  return steps.empty() ? 0 : total - (steps.size() - 1);
}

std::vector<EdgeId> MultiStepVizingChain::distinct_edges() const {
  std::vector<EdgeId> out;
  for (const auto& s : steps) {
    out.insert(out.end(), s.fan.edges.edges.begin(), s.fan.edges.edges.end());
    out.insert(out.end(), s.path.edges.edges.begin(), s.path.edges.edges.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t default_trunc_len(const Graph& g, unsigned delta_power) {
  const std::size_t n = std::max<std::size_t>(g.vertex_count(), 2);
  const auto log_n = static_cast<std::size_t>(std::bit_width(n - 1));
  const auto scale = static_cast<std::size_t>(std::pow(static_cast<double>(std::max<std::size_t>(g.max_degree(), 1)),
                                                       static_cast<double>(delta_power)));
  return std::max<std::size_t>(1, log_n * scale);
}

namespace {

// Bookkeeping shared by the search and the enumeration: pivots of earlier
// steps and edges of earlier truncated paths.
struct History {
  std::vector<Vertex> pivots;
  std::unordered_set<EdgeId> path_edges;

  std::vector<std::size_t> legal_points(const AlternatingPath& p, std::size_t trunc_len) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 1; t <= trunc_len && t < p.edges.length(); ++t) {
      if (path_edges.contains(p.edges.edges[t - 1])) break;
      if (std::find(pivots.begin(), pivots.end(), p.vertices[t]) == pivots.end()) out.push_back(t);
    }
    return out;
  }
};

}  // namespace

MultiStepVizingChain multi_step_search(const PartialEdgeColoring& state, EdgeId e, const MultiStepOptions& options) {
  const Graph& g = state.graph();
  const std::size_t ell = options.trunc_len != 0 ? options.trunc_len : default_trunc_len(g, options.delta_power);
  require_uncolored_at(state, e < g.edge_count() ? g.edge(e).u : 0, e);
  std::mt19937_64 rng(options.seed);
  MultiStepVizingChain out;
  PartialEdgeColoring work = state;
  History history;
  EdgeId current = e;
  Vertex pivot = g.edge(e).u;
  for (std::size_t spent = 0; spent < options.max_steps; ++spent) {
    VizingChain w = build_vizing_chain(work, pivot, current);
    if (w.path.edges.length() <= ell) {
      out.steps.push_back({std::move(w.fan), std::move(w.path)});
      return out;
    }
    history.pivots.push_back(pivot);
    const auto points = history.legal_points(w.path, ell);
    if (points.empty()) {
      work = state;
      history = History{};
      out.steps.clear();
      ++out.restarts;
      current = e;
      pivot = g.edge(e).u;
      continue;
    }
    const std::size_t t = points[std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng)];
    AlternatingPath kept = w.path.prefix(t);
    shift_in_place(work, w.fan.edges + kept.edges);
    history.path_edges.insert(kept.edges.edges.begin(), kept.edges.edges.end());
    current = kept.edges.edges.back();
    pivot = kept.vertices.back();
    out.steps.push_back({std::move(w.fan), std::move(kept)});
  }
  throw Error(ErrorCode::kStepBudgetExhausted,
              "no augmenting chain within " + std::to_string(options.max_steps) + " steps");
}

void augment_in_place(PartialEdgeColoring& state, const MultiStepVizingChain& chain) {
  if (chain.steps.empty() || chain.steps.back().path.truncated) {
    throw Error(ErrorCode::kNotAugmenting, "multi-step chain does not end with a complete Vizing chain");
  }
  PartialEdgeColoring work = state;
  try {
    for (std::size_t i = 0; i + 1 < chain.steps.size(); ++i) {
      shift_in_place(work, chain.steps[i].fan.edges + chain.steps[i].path.edges);
    }
  } catch (const Error& err) {
    throw Error(ErrorCode::kNotAugmenting, err.what());
  }
  const VizingStep& last = chain.steps.back();
  augment_in_place(work, last.fan.edges + last.path.edges);
  state = std::move(work);
}

namespace {

class Enumerator {
 public:
  Enumerator(PartialEdgeColoring& work, std::size_t max_steps, std::size_t trunc_len, std::size_t budget,
             std::vector<MultiStepVizingChain>& out)
      : work_(work), max_steps_(max_steps), ell_(trunc_len), budget_(budget), out_(out) {}

  void run(Vertex pivot, EdgeId current) {
    VizingChain w = build_vizing_chain(work_, pivot, current);
    if (w.path.edges.length() <= ell_) {
      steps_.steps.push_back({std::move(w.fan), std::move(w.path)});
      emit();
      steps_.steps.pop_back();
      return;
    }
    history_.pivots.push_back(pivot);
    for (std::size_t t : history_.legal_points(w.path, ell_)) {
      AlternatingPath kept = w.path.prefix(t);
      const Chain shifted = w.fan.edges + kept.edges;
      steps_.steps.push_back({w.fan, kept});
      if (steps_.steps.size() == max_steps_) {
        emit();
      } else {
        shift_in_place(work_, shifted);
        for (EdgeId f : kept.edges.edges) history_.path_edges.insert(f);
        run(kept.vertices.back(), kept.edges.edges.back());
        for (EdgeId f : kept.edges.edges) history_.path_edges.erase(f);
        unshift_in_place(work_, shifted);
      }
      steps_.steps.pop_back();
    }
    history_.pivots.pop_back();
  }

 private:
  void emit() {
    if (out_.size() >= budget_) {
      throw Error(ErrorCode::kEnumerationBudgetExhausted,
                  "more than " + std::to_string(budget_) + " multi-step chains");
    }
    out_.push_back(steps_);
  }

  PartialEdgeColoring& work_;
  std::size_t max_steps_;
  std::size_t ell_;
  std::size_t budget_;
  std::vector<MultiStepVizingChain>& out_;
  MultiStepVizingChain steps_;
  History history_;
};

}  // namespace

std::vector<MultiStepVizingChain> enumerate_chains(const PartialEdgeColoring& state, EdgeId e,
                                                   std::size_t max_steps, std::size_t trunc_len,
                                                   std::size_t budget) {
  const Graph& g = state.graph();
  require_uncolored_at(state, e < g.edge_count() ? g.edge(e).u : 0, e);
  if (max_steps == 0 || trunc_len == 0) {
    throw Error(ErrorCode::kInvalidArgument, "step and truncation bounds must be positive");
  }
  std::vector<MultiStepVizingChain> out;
  PartialEdgeColoring work = state;
  Enumerator(work, max_steps, trunc_len, budget, out).run(g.edge(e).u, e);
  return out;
}

std::size_t chains_through(const PartialEdgeColoring& state, EdgeId f, std::size_t max_steps,
                           std::size_t trunc_len, std::size_t budget) {
  if (!state.is_colored(f)) return 0;
  std::size_t count = 0;
  std::size_t seen = 0;
  for (EdgeId e : state.uncolored()) {
    const auto chains = enumerate_chains(state, e, max_steps, trunc_len, budget - std::min(seen, budget));
    seen += chains.size();
    for (const auto& c : chains) {
      const auto edges = c.distinct_edges();
      count += std::binary_search(edges.begin(), edges.end(), f);
    }
  }
  return count;
}

void write_edge_coloring(std::ostream& out, const Graph& g, const std::vector<std::uint64_t>& colors) {
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << (e < colors.size() ? colors[e] : 0) << '\n';
  }
}

void write_chain_trace(std::ostream& out, const Graph& g, const MultiStepVizingChain& chain) {
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    for (EdgeId e : chain.steps[i].fan.edges.edges)
      out << i + 1 << " fan " << g.edge(e).u << ' ' << g.edge(e).v << '\n';
    for (EdgeId e : chain.steps[i].path.edges.edges)
      out << i + 1 << " path " << g.edge(e).u << ' ' << g.edge(e).v << '\n';
  }
}

}  // namespace locsim
