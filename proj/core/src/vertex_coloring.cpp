#include "locsim/vertex_coloring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "locsim/error.hpp"

namespace locsim {

std::vector<Vertex> PartialVertexColoring::uncolored() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < colors.size(); ++v)
    if (colors[v] == kUncolored) out.push_back(v);
  return out;
}

bool PartialVertexColoring::is_proper_on_domain(const Graph& g) const {
  for (const Edge& e : g.edges()) {
    if (colors[e.u] != kUncolored && colors[e.u] == colors[e.v]) return false;
  }
  for (auto c : colors)
    if (c > palette_size) return false;
  return true;
}

std::size_t log_star(std::uint64_t n) {
  std::size_t count = 0;
  double x = static_cast<double>(n);
  while (x > 2.0) {
    x = std::log2(x);
    ++count;
  }
  return count;
}

std::size_t ceil_log2(const BigCount& k) {
  if (k <= 1) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(BigCount(k - 1))) + 1;
}

BigCount cv_bound(const BigCount& k, std::size_t delta) {
  const BigCount base = 2 * ceil_log2(k);
  return boost::multiprecision::pow(base, static_cast<unsigned>(delta));
}

namespace {

// cv_bound(k, delta) >= k, decided without materializing huge powers.
bool at_fixed_point(const BigCount& k, std::size_t delta) {
  if (k <= 1) return true;
  const std::size_t k_bits = static_cast<std::size_t>(boost::multiprecision::msb(k)) + 1;
  // The base 2*ceil_log2(k) is at least 2, so base^delta >= 2^delta >= 2^k_bits > k.
  if (delta >= k_bits) return true;
  return cv_bound(k, delta) >= k;
}

void check_proper(const Graph& g, std::span<const std::uint64_t> colors, std::uint64_t k, std::size_t delta) {
  if (colors.size() != g.vertex_count()) {
    throw Error(ErrorCode::kImproperInput, "coloring size does not match the graph");
  }
  if (g.max_degree() > delta) {
    throw Error(ErrorCode::kImproperInput, "graph degree " + std::to_string(g.max_degree()) +
                                               " exceeds declared bound " + std::to_string(delta));
  }
  for (Vertex v = 0; v < colors.size(); ++v) {
    if (colors[v] < 1 || colors[v] > k) {
      throw Error(ErrorCode::kImproperInput, "color of vertex " + std::to_string(v) + " outside 1.." + std::to_string(k));
    }
  }
  for (const Edge& e : g.edges()) {
    if (colors[e.u] == colors[e.v]) {
      throw Error(ErrorCode::kImproperInput,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is monochromatic");
    }
  }
}

}  // namespace

std::vector<BigCount> cv_schedule(const BigCount& k, std::size_t delta) {
  std::vector<BigCount> out{k};
  while (!at_fixed_point(out.back(), delta)) out.push_back(cv_bound(out.back(), delta));
  return out;
}

namespace {

// cv_step on an input already known to be a proper k-coloring.
std::vector<std::uint64_t> cv_step_unchecked(const Graph& g, std::span<const std::uint64_t> colors, std::uint64_t k,
                                             std::size_t delta) {
  const std::uint64_t base = 2 * ceil_log2(k);

  std::vector<std::uint64_t> out(g.vertex_count());
  std::vector<std::uint64_t> nbr;
  std::vector<std::uint64_t> digits;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t own = colors[v] - 1;
    nbr.clear();
    for (Vertex w : g.neighbors(v)) nbr.push_back(colors[w] - 1);
    std::sort(nbr.begin(), nbr.end());
    digits.clear();
    for (std::uint64_t other : nbr) {
      const auto pos = static_cast<std::uint64_t>(std::countr_zero(own ^ other));
      digits.push_back(2 * pos + ((own >> pos) & 1U));
    }
    const std::uint64_t pad = digits.empty() ? 0 : digits.front();
    digits.resize(delta, pad);
    std::uint64_t value = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) value = value * base + *it;
    out[v] = value + 1;
  }
  return out;
}

std::vector<std::uint64_t> greedy_sweep(const Graph& g, std::span<const std::uint64_t> classes) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  // Vertices of one class are pairwise non-adjacent, so processing a class in
  // any order equals the simultaneous round; empty classes are idle rounds.
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return classes[a] < classes[b]; });
  std::vector<std::uint64_t> out(g.vertex_count(), kUncolored);
  std::vector<char> taken(g.max_degree() + 2);
  for (Vertex v : order) {
    std::fill(taken.begin(), taken.end(), 0);
    for (Vertex w : g.neighbors(v))
      if (out[w] != kUncolored) taken[out[w]] = 1;
    std::uint64_t c = 1;
    while (taken[c]) ++c;
    out[v] = c;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> cv_step(const Graph& g, std::span<const std::uint64_t> colors, std::uint64_t k,
                                   std::size_t delta) {
  if (k < 2) throw Error(ErrorCode::kImproperInput, "cv_step needs k >= 2");
  check_proper(g, colors, k, delta);
  if (cv_bound(k, delta) > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "cv_step output palette does not fit in 64 bits");
  }
  return cv_step_unchecked(g, colors, k, delta);
}

Reduction reduce_to_constant(const Graph& g, std::span<const std::uint64_t> colors, std::uint64_t k,
                             std::size_t delta) {
  check_proper(g, colors, k, delta);
  const auto schedule = cv_schedule(k, delta);
  Reduction r;
  r.colors.assign(colors.begin(), colors.end());
  // Each step maps a proper coloring to a proper one, so only the input is checked.
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
    if (schedule[i + 1] > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument, "cv_step output palette does not fit in 64 bits");
    }
    r.colors = cv_step_unchecked(g, r.colors, static_cast<std::uint64_t>(schedule[i]), delta);
    ++r.iterations;
  }
  r.palette = static_cast<std::uint64_t>(schedule.back());
  return r;
}

std::vector<std::uint64_t> greedy_finish(const Graph& g, std::span<const std::uint64_t> classes,
                                         std::uint64_t class_count, std::size_t delta) {
  check_proper(g, classes, class_count, delta);
  return greedy_sweep(g, classes);
}

GreedyPlan greedy_plan(std::uint64_t initial_palette, std::size_t delta) {
  const auto schedule = cv_schedule(initial_palette, delta);
  GreedyPlan plan;
  plan.initial_palette = initial_palette;
  plan.reduction_rounds = schedule.size() - 1;
  plan.reduced_palette = static_cast<std::uint64_t>(schedule.back());
  plan.sweep_rounds = plan.reduced_palette;
  return plan;
}

LocalAlgorithm distributed_greedy(Target mode, std::size_t delta, unsigned c_exponent) {
  const std::size_t host_delta = mode == Target::kVertex ? delta : (delta >= 1 ? 2 * delta - 2 : 0);
  auto initial_palette = [mode, c_exponent](std::size_t n) -> std::uint64_t {
    const std::uint64_t space = id_space(n, c_exponent);
    if (mode == Target::kVertex) return space;
    const unsigned __int128 sq = static_cast<unsigned __int128>(space) * space;
    if (sq > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument, "edge identifiers (n^c)^2 overflow 64 bits; lower c_exponent");
    }
    return static_cast<std::uint64_t>(sq);
  };

  LocalAlgorithm a;
  a.name = mode == Target::kVertex ? "greedy-vertex" : "greedy-edge";
  a.target = mode;
  a.radius = [=](std::size_t n) { return greedy_plan(initial_palette(n), host_delta).total_rounds(); };
  a.batch = [=](const Graph& host, std::span<const std::uint64_t> labels, std::size_t n,
                const RandomTape*) -> std::vector<std::optional<std::uint64_t>> {
    if (labels.size() != host.vertex_count()) return std::vector<std::optional<std::uint64_t>>(host.vertex_count());
    const GreedyPlan plan = greedy_plan(initial_palette(n), host_delta);
    std::vector<std::uint64_t> colors(labels.size());
    std::transform(labels.begin(), labels.end(), colors.begin(), [](std::uint64_t id) { return id + 1; });
    const Reduction red = reduce_to_constant(host, colors, plan.initial_palette, host_delta);
    const auto final_colors = greedy_sweep(host, red.colors);
    return {final_colors.begin(), final_colors.end()};
  };
  a.evaluate = [batch = a.batch](const RootedBall& b, std::size_t n,
                                 const RandomTape* tape) -> std::optional<std::uint64_t> {
    return batch(b.local_graph, b.labels, n, tape)[0];
  };
  return a;
}

std::vector<std::uint64_t> sequential_greedy(const Graph& g, std::span<const Vertex> order) {
  if (order.size() != g.vertex_count()) throw Error(ErrorCode::kInvalidArgument, "order must list every vertex");
  std::vector<std::uint64_t> out(g.vertex_count(), kUncolored);
  std::vector<char> taken(g.max_degree() + 2);
  for (Vertex v : order) {
    if (out[v] != kUncolored) throw Error(ErrorCode::kInvalidArgument, "order repeats a vertex");
    std::fill(taken.begin(), taken.end(), 0);
    for (Vertex w : g.neighbors(v))
      if (out[w] != kUncolored) taken[out[w]] = 1;
    std::uint64_t c = 1;
    while (taken[c]) ++c;
    out[v] = c;
  }
  return out;
}

}  // namespace locsim
