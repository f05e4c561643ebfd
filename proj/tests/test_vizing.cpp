#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "instances.hpp"
#include "locsim/error.hpp"
#include "locsim/vizing.hpp"
#include "oracles.hpp"

using namespace locsim;

namespace {

Graph family(Family f, std::size_t n) {
  FamilySpec s;
  s.family = f;
  s.n = n;
  return gen_graph(s);
}

EdgeId eid(const Graph& g, Vertex a, Vertex b) { return g.edge_id(a, b); }

// Colors the listed edges; every other edge stays uncolored.
PartialEdgeColoring colored(const Graph& g, std::initializer_list<std::tuple<Vertex, Vertex, std::uint64_t>> cs,
                            std::optional<std::uint64_t> palette = std::nullopt) {
  PartialEdgeColoring s(g, palette);
  for (const auto& [a, b, c] : cs) s.set(eid(g, a, b), c);
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

// Uncolors each edge independently with probability p.
PartialEdgeColoring thinned(const Graph& g, double p, std::mt19937_64& rng) {
  PartialEdgeColoring s(g, sequential_vizing(g));
  std::bernoulli_distribution drop(p);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (drop(rng)) s.set(e, 0);
  return s;
}

// Random walk of distinct colored edges after an uncolored start.
Chain random_chain(const Graph& g, const PartialEdgeColoring& s, EdgeId start, std::size_t len,
                   std::mt19937_64& rng) {
  Chain p{{start}};
  while (p.length() < len) {
    const Edge& last = g.edge(p.edges.back());
    std::vector<EdgeId> next;
    for (Vertex w : {last.u, last.v})
      for (EdgeId f : g.incident_edges(w))
        if (s.is_colored(f) && std::find(p.edges.begin(), p.edges.end(), f) == p.edges.end()) next.push_back(f);
    if (next.empty()) break;
    p.edges.push_back(next[rng() % next.size()]);
  }
  return p;
}

}  // namespace

TEST(Missing, Bookkeeping) {
  const Graph star = family(Family::kStar, 3);  // center 0 with 3 leaves
  PartialEdgeColoring s(star);
  EXPECT_EQ(s.palette(), 4u);
  EXPECT_EQ(s.missing(0), (std::vector<std::uint64_t>{1, 2, 3, 4}));
  s.set(eid(star, 0, 1), 1);
  s.set(eid(star, 0, 2), 2);
  s.set(eid(star, 0, 3), 3);
  EXPECT_EQ(s.missing(0), (std::vector<std::uint64_t>{4}));
  s.set(eid(star, 0, 3), 4);
  EXPECT_TRUE(s.is_missing(0, 3));
  EXPECT_FALSE(s.is_missing(0, 4));
  EXPECT_EQ(s.missing(3), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(code_of([&] { s.set(eid(star, 0, 3), 1); }), ErrorCode::kImproperInput);
  EXPECT_EQ(code_of([&] { s.set(eid(star, 0, 3), 5); }), ErrorCode::kImproperInput);
}

TEST(Shift, DefinitionCases) {
  const Graph p3 = family(Family::kPath, 3);
  const EdgeId e0 = eid(p3, 0, 1);
  const EdgeId e1 = eid(p3, 1, 2);
  PartialEdgeColoring s = colored(p3, {{1, 2, 2}});
  EXPECT_EQ(shift(s, Chain{{e0}}), s);
  const auto t = shift(s, Chain{{e0, e1}});
  EXPECT_EQ(t.color(e0), 2u);
  EXPECT_EQ(t.color(e1), 0u);
  EXPECT_EQ(code_of([&] { shift(s, Chain{{e1, e0}}); }), ErrorCode::kNotShiftable);
  EXPECT_EQ(code_of([&] { shift(s, Chain{}); }), ErrorCode::kNotShiftable);
}

TEST(Shift, CollisionAtSharedEndpoint) {
  // a-b uncolored, b-c = 1, c-d = 2, b-e = 2: shifting (ab, bc, cd) puts 2
  // on bc next to be.
  const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {1, 4}});
  const auto s = colored(g, {{1, 2, 1}, {2, 3, 2}, {1, 4, 2}});
  const Chain p{{eid(g, 0, 1), eid(g, 1, 2), eid(g, 2, 3)}};
  EXPECT_EQ(code_of([&] { shift(s, p); }), ErrorCode::kImproperShift);
  PartialEdgeColoring copy = s;
  EXPECT_THROW(shift_in_place(copy, p), Error);
  EXPECT_EQ(copy, s);
}

TEST(Shift, RoundTripsRestoreColoring) {
  std::mt19937_64 rng(8);
  int shifted = 0;
  int improper = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = instances::random_regular(40, 4, trial);
    const PartialEdgeColoring s = thinned(g, 0.15, rng);
    const auto unc = s.uncolored();
    if (unc.empty()) continue;
    const Chain p = random_chain(g, s, unc[rng() % unc.size()], 1 + rng() % 8, rng);
    PartialEdgeColoring t = s;
    try {
      shift_in_place(t, p);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kImproperShift);
      EXPECT_EQ(t, s);
      ++improper;
      continue;
    }
    ++shifted;
    EXPECT_TRUE(oracle::proper_edge(g, t.colors()) || !t.uncolored().empty());
    EXPECT_TRUE(t.is_proper());
    for (std::size_t i = 0; i + 1 < p.length(); ++i) EXPECT_EQ(t.color(p.edges[i]), s.color(p.edges[i + 1]));
    EXPECT_FALSE(t.is_colored(p.edges.back()));
    for (EdgeId f = 0; f < g.edge_count(); ++f)
      if (std::find(p.edges.begin(), p.edges.end(), f) == p.edges.end()) EXPECT_EQ(t.color(f), s.color(f));
    unshift_in_place(t, p);
    EXPECT_EQ(t, s);
  }
  EXPECT_GT(shifted, 100);
  EXPECT_GT(improper, 0);
}

TEST(AlternatingPath, Shapes) {
  const Graph p3 = family(Family::kPath, 3);
  const auto s = colored(p3, {{0, 1, 1}, {1, 2, 2}}, 3);
  EXPECT_TRUE(alternating_path(s, 0, 3, 1).edges.edges.empty());
  const auto two = alternating_path(s, 0, 1, 2);
  EXPECT_EQ(two.edges.edges, (std::vector<EdgeId>{eid(p3, 0, 1), eid(p3, 1, 2)}));
  EXPECT_EQ(two.vertices, (std::vector<Vertex>{0, 1, 2}));

  const Graph c4 = family(Family::kCycle, 4);
  const auto cyc = colored(c4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {0, 3, 2}});
  const auto around = alternating_path(cyc, 0, 1, 2);
  EXPECT_EQ(around.edges.length(), 4u);
  EXPECT_TRUE(around.edges.edge_injective());
  EXPECT_EQ(around.vertices.back(), 0u);
  EXPECT_THROW(alternating_path(cyc, 0, 1, 1), Error);
}

TEST(AlternatingPath, ColorsAlternate) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = instances::random_regular(60, 5, trial);
    const PartialEdgeColoring s = thinned(g, 0.1, rng);
    const Vertex x = rng() % 60;
    const auto p = alternating_path(s, x, 1 + trial % 6, 1 + (trial + 1) % 6);
    for (std::size_t i = 0; i < p.edges.length(); ++i)
      EXPECT_EQ(s.color(p.edges.edges[i]), i % 2 == 0 ? p.alpha : p.beta);
    EXPECT_TRUE(p.edges.connected(g));
    EXPECT_EQ(alternating_path(s, x, p.alpha, p.beta).edges.edges, p.edges.edges);
  }
}

TEST(BuildVizingChain, CommonMissingColor) {
  const Graph p3 = family(Family::kPath, 3);
  const auto s = colored(p3, {{1, 2, 1}});
  const auto w = build_vizing_chain(s, 0, eid(p3, 0, 1));
  EXPECT_EQ(w.chain().edges, std::vector<EdgeId>{eid(p3, 0, 1)});
  const auto t = augment(s, w.chain());
  EXPECT_EQ(t.color(eid(p3, 0, 1)), 2u);
  EXPECT_EQ(t.color(eid(p3, 1, 2)), 1u);
}

TEST(BuildVizingChain, FanRotationWithEmptyPath) {
  // x = 0 misses {3, 4}; y0 = 1 carries 3 and 4, so the fan takes the edge
  // to y1 = 2 (color 1), which shares 3 with x.
  const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
  const auto s = colored(g, {{0, 2, 1}, {0, 3, 2}, {1, 4, 3}, {1, 5, 4}});
  const auto w = build_vizing_chain(s, 0, eid(g, 0, 1));
  EXPECT_EQ(w.fan.edges.edges, (std::vector<EdgeId>{eid(g, 0, 1), eid(g, 0, 2)}));
  EXPECT_TRUE(w.path.edges.edges.empty());
  const auto t = augment(s, w.chain());
  EXPECT_TRUE(oracle::proper_edge(g, t.colors()));
  EXPECT_TRUE(t.uncolored().empty());
  EXPECT_EQ(t.color(eid(g, 0, 1)), 1u);
  EXPECT_EQ(t.color(eid(g, 0, 2)), 3u);
}

TEST(BuildVizingChain, FanAndPathAwayFromFan) {
  // Fan (x y0, x y1, x y2) closes on β = 1, the color of x y1; the 3/1 path
  // from y2 stops after one edge at e = 8.
  const Graph g = Graph::from_edges(10, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7},
                                                          {3, 8}, {3, 9}});
  const auto s = colored(g, {{0, 2, 1}, {0, 3, 2}, {1, 4, 3}, {1, 5, 4}, {2, 6, 3}, {2, 7, 4}, {3, 8, 3}, {3, 9, 4}});
  const auto w = build_vizing_chain(s, 0, eid(g, 0, 1));
  EXPECT_EQ(w.fan.edges.length(), 3u);
  EXPECT_EQ(w.path.alpha, 3u);
  EXPECT_EQ(w.path.beta, 1u);
  EXPECT_EQ(w.path.edges.edges, std::vector<EdgeId>{eid(g, 3, 8)});
  const auto t = augment(s, w.chain());
  EXPECT_TRUE(oracle::proper_edge(g, t.colors()));
  EXPECT_TRUE(t.uncolored().empty());
}

TEST(Augment, ContractOnRandomPartialColorings) {
  std::mt19937_64 rng(12);
  int with_path = 0;
  int long_fans = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = instances::random_bounded_graph(30, 3 + trial % 5, 120, rng);
    PartialEdgeColoring s = thinned(g, 0.3, rng);
    for (EdgeId e : s.uncolored()) {
      const Vertex x = rng() % 2 ? g.edge(e).u : g.edge(e).v;
      const auto w = build_vizing_chain(s, x, e);
      const Chain p = w.chain();
      with_path += !w.path.edges.edges.empty();
      long_fans += w.fan.edges.length() > 2;
      ASSERT_TRUE(is_augmenting(s, p));
      const auto t = augment(s, p);
      EXPECT_EQ(t.colored_count(), s.colored_count() + 1);
      EXPECT_TRUE(t.is_proper());
      for (EdgeId f = 0; f < g.edge_count(); ++f)
        if (std::find(p.edges.begin(), p.edges.end(), f) == p.edges.end()) EXPECT_EQ(t.color(f), s.color(f));
      s = t;
    }
    EXPECT_TRUE(oracle::proper_edge(g, s.colors()));
  }
  EXPECT_GT(with_path, 0);
  EXPECT_GT(long_fans, 0);
}

TEST(Augment, RejectsNonAugmentingChain) {
  // Path 0-1-2-3 with 1-2 = 1, 2-3 = 2 and two colors. The bare edge 0-1 is
  // augmenting; shifting 1 onto it leaves 1-2 with both colors blocked.
  const Graph p4 = family(Family::kPath, 4);
  const auto s = colored(p4, {{1, 2, 1}, {2, 3, 2}}, 2);
  const Chain bare{{eid(p4, 0, 1)}};
  const Chain longer{{eid(p4, 0, 1), eid(p4, 1, 2)}};
  EXPECT_TRUE(is_augmenting(s, bare));
  EXPECT_FALSE(is_augmenting(s, longer));
  EXPECT_NO_THROW(shift(s, longer));
  EXPECT_EQ(code_of([&] { augment(s, longer); }), ErrorCode::kNotAugmenting);
  EXPECT_EQ(code_of([&] { augment(s, Chain{{eid(p4, 1, 2)}}); }), ErrorCode::kNotAugmenting);
}

TEST(SequentialVizing, SmallFamilies) {
  const Graph c5 = family(Family::kCycle, 5);
  const auto a = sequential_vizing(c5);
  EXPECT_TRUE(oracle::proper_edge(c5, a));
  EXPECT_LE(oracle::palette(a), 3u);

  const Graph k4 = family(Family::kComplete, 4);
  const auto b = sequential_vizing(k4);
  EXPECT_TRUE(oracle::proper_edge(k4, b));
  EXPECT_LE(oracle::palette(b), 4u);
  EXPECT_EQ(oracle::edge_chromatic_number(k4), 3u);

  const Graph pet = family(Family::kPetersen, 0);
  const auto c = sequential_vizing(pet);
  EXPECT_TRUE(oracle::proper_edge(pet, c));
  EXPECT_LE(oracle::palette(c), 4u);
  EXPECT_FALSE(oracle::k_edge_colorable(pet, 3));
}

TEST(SequentialVizing, RandomGraphsWithinDeltaPlusOne) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + rng() % 200;
    const Graph g = instances::random_bounded_graph(n, 1 + rng() % 8, 4 * n, rng);
    const auto c = sequential_vizing(g);
    EXPECT_TRUE(oracle::proper_edge(g, c));
    for (auto x : c) EXPECT_LE(x, g.max_degree() + 1);
  }
}

TEST(SequentialVizing, TinyGraphsAgainstBruteForce) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = instances::random_bounded_graph(4 + rng() % 5, 4, 10 + rng() % 10, rng);
    if (g.edge_count() > 12 || g.edge_count() == 0) continue;
    const std::size_t chi = oracle::edge_chromatic_number(g);
    EXPECT_TRUE(chi == g.max_degree() || chi == g.max_degree() + 1);
    EXPECT_GE(oracle::palette(sequential_vizing(g)), chi);
  }
}

TEST(MultiStep, OneStepMatchesVizingChain) {
  const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
  const auto s = colored(g, {{0, 2, 1}, {0, 3, 2}, {1, 4, 3}, {1, 5, 4}});
  const auto m = multi_step_search(s, eid(g, 0, 1));
  ASSERT_EQ(m.steps.size(), 1u);
  const auto w = build_vizing_chain(s, 0, eid(g, 0, 1));
  EXPECT_EQ(m.steps[0].fan.edges.edges, w.fan.edges.edges);
  EXPECT_EQ(m.steps[0].path.edges.edges, w.path.edges.edges);
  EXPECT_EQ(m.size(), w.chain().length());
}

TEST(MultiStep, LongPathIsTruncated) {
  // The fan-and-path instance with the 3/1 path from y2 extended to 20 edges.
  std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 9}};
  Vertex prev = 3;
  for (Vertex v = 10; v < 30; ++v) {
    edges.push_back({prev, v});
    prev = v;
  }
  const Graph g = Graph::from_edges(30, edges);
  PartialEdgeColoring s(g);
  for (const auto& [a, b, c] : std::vector<std::tuple<Vertex, Vertex, std::uint64_t>>{
           {0, 2, 1}, {0, 3, 2}, {1, 4, 3}, {1, 5, 4}, {2, 6, 3}, {2, 7, 4}, {3, 9, 4}})
    s.set(eid(g, a, b), c);
  prev = 3;
  for (Vertex v = 10; v < 30; ++v) {
    s.set(eid(g, prev, v), (v - 10) % 2 == 0 ? 3 : 1);
    prev = v;
  }
  EXPECT_EQ(build_vizing_chain(s, 0, eid(g, 0, 1)).path.edges.length(), 20u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MultiStepOptions o;
    o.trunc_len = 5;
    o.seed = seed;
    const auto m = multi_step_search(s, eid(g, 0, 1), o);
    EXPECT_GE(m.steps.size(), 2u);
    EXPECT_TRUE(m.steps.front().path.truncated);
    EXPECT_LE(m.steps.front().path.edges.length(), 5u);
    PartialEdgeColoring t = s;
    augment_in_place(t, m);
    EXPECT_EQ(t.colored_count(), s.colored_count() + 1);
    EXPECT_TRUE(t.is_proper());
    const auto distinct = m.distinct_edges();
    for (EdgeId f = 0; f < g.edge_count(); ++f)
      if (!std::binary_search(distinct.begin(), distinct.end(), f)) EXPECT_EQ(t.color(f), s.color(f));
  }
}

TEST(MultiStep, RandomRegularSingleUncoloredEdge) {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = instances::random_regular(1000, 4, seed);
    PartialEdgeColoring s(g, sequential_vizing(g));
    const auto e = instances::one_hard_uncolored(g, s, rng);
    ASSERT_TRUE(e.has_value());
    MultiStepOptions o;
    o.seed = seed;
    const auto m = multi_step_search(s, *e, o);
    EXPECT_LE(m.size(), 200 * std::log2(1000.0));
    PartialEdgeColoring t = s;
    augment_in_place(t, m);
    EXPECT_TRUE(t.uncolored().empty());
    EXPECT_TRUE(oracle::proper_edge(g, t.colors()));
  }
}

TEST(MultiStep, StepBudget) {
  std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 9}, {3, 10}, {10, 11}};
  const Graph g = Graph::from_edges(12, edges);
  const auto s = colored(g, {{0, 2, 1}, {0, 3, 2}, {1, 4, 3}, {1, 5, 4}, {2, 6, 3}, {2, 7, 4}, {3, 9, 4},
                             {3, 10, 3}, {10, 11, 1}});
  MultiStepOptions o;
  o.trunc_len = 1;
  o.max_steps = 1;
  EXPECT_EQ(code_of([&] { multi_step_search(s, eid(g, 0, 1), o); }), ErrorCode::kStepBudgetExhausted);
}

TEST(ChainsThrough, UncoloredStateHasNone) {
  const Graph g = instances::random_regular(12, 3, 1);
  const PartialEdgeColoring s(g);
  for (EdgeId f = 0; f < g.edge_count(); ++f) EXPECT_EQ(chains_through(s, f, 2, 3), 0u);
}

TEST(ChainsThrough, DoubleCountingIdentity) {
  std::mt19937_64 rng(5);
  std::size_t max_through = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = instances::random_regular(30, 3, 40 + trial);
    PartialEdgeColoring s(g, sequential_vizing(g));
    ASSERT_TRUE(instances::one_hard_uncolored(g, s, rng).has_value());
    s.set(static_cast<EdgeId>(rng() % g.edge_count()), 0);
    for (std::size_t steps : {1u, 2u, 3u}) {
      std::size_t lhs = 0;
      for (EdgeId e : s.uncolored())
        for (const auto& c : enumerate_chains(s, e, steps, 2))
          for (EdgeId f : c.distinct_edges()) lhs += s.is_colored(f);
      std::size_t rhs = 0;
      for (EdgeId f = 0; f < g.edge_count(); ++f) {
        const auto k = chains_through(s, f, steps, 2);
        rhs += k;
        if (steps == 1) max_through = std::max(max_through, k);
      }
      EXPECT_EQ(lhs, rhs) << trial << " " << steps;
    }
  }
  EXPECT_GT(max_through, 0u);
  RecordProperty("max_chains_through_one_step", static_cast<int>(max_through));
}

TEST(ChainsThrough, BudgetExhausted) {
  const Graph g = instances::random_regular(30, 3, 3);
  std::mt19937_64 rng(1);
  const PartialEdgeColoring s = thinned(g, 0.3, rng);
  const EdgeId e = s.uncolored().front();
  EXPECT_EQ(code_of([&] { enumerate_chains(s, e, 3, 4, 0); }), ErrorCode::kEnumerationBudgetExhausted);
}

TEST(Serialization, EdgeColoringAndTrace) {
  const Graph p3 = family(Family::kPath, 3);
  std::ostringstream os;
  write_edge_coloring(os, p3, {1, 0});
  EXPECT_EQ(os.str(), "0 1 1\n1 2 0\n");
  const auto s = colored(p3, {{1, 2, 1}});
  std::ostringstream tr;
  write_chain_trace(tr, p3, multi_step_search(s, eid(p3, 0, 1)));
  EXPECT_EQ(tr.str(), "1 fan 0 1\n");
}
