#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "node2vec/errors.hpp"
#include "node2vec/walker.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace n2v;
using n2v::testing::brute_second_step;
using n2v::testing::first_order;
using n2v::testing::random_graph;

TEST(Bias, AlphaCases) {
  EXPECT_DOUBLE_EQ(alpha(4.0, 0.25, BiasCase::Return), 0.25);
  EXPECT_DOUBLE_EQ(alpha(4.0, 0.25, BiasCase::Adjacent), 1.0);
  EXPECT_DOUBLE_EQ(alpha(4.0, 0.25, BiasCase::Outward), 4.0);
  const Graph g = n2v::testing::karate();
  const NodeId a = *g.find("0");
  const NodeId b = *g.find("1");
  const NodeId c = *g.find("2");
  EXPECT_EQ(bias_case(g, a, a), BiasCase::Return);
  EXPECT_EQ(bias_case(g, a, b), BiasCase::Adjacent);
  EXPECT_EQ(bias_case(g, *g.find("32"), c), BiasCase::Adjacent);
  EXPECT_EQ(bias_case(g, *g.find("16"), b), BiasCase::Outward);
}

TEST(Transitions, MatchDefinitionOnRandomGraphs) {
  Rng rng(99);
  const double grid[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const bool directed = seed % 3 == 2;
    const Graph g = random_graph(12, 0.35, seed, directed, true, seed % 4 == 0);
    const double p = grid[rng.below(5)];
    const double q = grid[rng.below(5)];
    for (TransitionMode mode : {TransitionMode::Precomputed, TransitionMode::Lazy}) {
      const auto index = TransitionIndex::build(g, p, q, mode);
      for (NodeId t = 0; t < g.num_nodes(); ++t) {
        if (g.degree(t) > 0) {
          const auto got = index.first_step_probabilities(g, t);
          const auto want = first_order(g, t);
          for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
        }
        for (NodeId v : g.neighbors(t).ids) {
          const auto got = index.second_step_probabilities(g, t, v);
          if (g.degree(v) == 0) {
            ASSERT_TRUE(got.empty());
            continue;
          }
          const auto want = brute_second_step(g, p, q, t, v);
          ASSERT_EQ(got.size(), want.size());
          for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
        }
      }
    }
  }
}

TEST(Transitions, UnitBiasReducesToFirstOrder) {
  const Graph g = random_graph(25, 0.2, 5, false, true);
  const auto index = TransitionIndex::build(g, 1.0, 1.0);
  for (NodeId t = 0; t < g.num_nodes(); ++t) {
    for (NodeId v : g.neighbors(t).ids) {
      const auto got = index.second_step_probabilities(g, t, v);
      const auto want = first_order(g, v);
      for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
    }
  }
}

TEST(Transitions, TableSizeIsSumOfSquaredDegrees) {
  const Graph g = n2v::testing::karate();
  std::size_t expected = g.num_arcs();
  for (NodeId v = 0; v < g.num_nodes(); ++v) expected += g.degree(v) * g.degree(v);
  EXPECT_EQ(TransitionIndex::build(g, 1, 1).table_slots(), expected);
  EXPECT_EQ(TransitionIndex::build(g, 1, 1, TransitionMode::Lazy).table_slots(), g.num_arcs());
  EXPECT_THROW(TransitionIndex::build(g, 0.0, 1.0), std::invalid_argument);
}

TEST(Walks, FollowEdgesAndHaveRequestedLength) {
  const Graph g = n2v::testing::karate();
  const auto index = TransitionIndex::build(g, 0.5, 2.0);
  Rng rng(3);
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    const auto walk = node2vec_walk(index, g, s, 80, rng);
    ASSERT_EQ(walk.size(), 80u);
    ASSERT_EQ(walk.front(), s);
    for (std::size_t i = 1; i < walk.size(); ++i) ASSERT_TRUE(g.has_edge(walk[i - 1], walk[i]));
  }
}

TEST(Walks, StopAtSinks) {
  const std::vector<Edge> chain{{0, 1, 1.0}, {1, 2, 1.0}};
  const Graph g = Graph::from_edges(3, chain, true);
  const auto index = TransitionIndex::build(g, 1, 1);
  Rng rng(1);
  EXPECT_EQ(node2vec_walk(index, g, 0, 10, rng), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(node2vec_walk(index, g, 2, 10, rng), (std::vector<NodeId>{2}));
}

TEST(Walks, LazyAndPrecomputedSampleTheSameChain) {
  // Same distributions, so two-step frequencies agree within sampling noise.
  const Graph g = random_graph(8, 0.6, 4, false, true);
  const auto pre = TransitionIndex::build(g, 0.5, 2.0);
  const auto lazy = TransitionIndex::build(g, 0.5, 2.0, TransitionMode::Lazy);
  std::map<std::tuple<NodeId, NodeId, NodeId>, double> a, b;
  Rng r1(5), r2(6);
  constexpr int kWalks = 40000;
  for (int i = 0; i < kWalks; ++i) {
    const auto w1 = node2vec_walk(pre, g, 0, 3, r1);
    const auto w2 = node2vec_walk(lazy, g, 0, 3, r2);
    a[{w1[0], w1[1], w1[2]}] += 1.0 / kWalks;
    b[{w2[0], w2[1], w2[2]}] += 1.0 / kWalks;
  }
  for (const auto& [key, freq] : a) EXPECT_NEAR(freq, b[key], 0.02);
}

TEST(Corpus, EveryNodeStartsRWalks) {
  const Graph g = n2v::testing::karate();
  WalkParams params;
  const auto index = TransitionIndex::build(g, 1, 1);
  const WalkCorpus c = generate_walks(index, g, params, 17);
  ASSERT_EQ(c.size(), 340u);
  std::vector<std::size_t> starts(g.num_nodes(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    ASSERT_EQ(c.walk(i).size(), 80u);
    ++starts[c.walk(i)[0]];
  }
  for (auto s : starts) EXPECT_EQ(s, 10u);
  // each pass visits every node once
  for (std::size_t pass = 0; pass < 10; ++pass) {
    std::set<NodeId> seen;
    for (std::size_t i = pass * 34; i < (pass + 1) * 34; ++i) seen.insert(c.walk(i)[0]);
    EXPECT_EQ(seen.size(), 34u);
  }
}

TEST(Corpus, IndependentOfWorkerCount) {
  const Graph g = random_graph(60, 0.1, 8, false, true);
  WalkParams params{0.5, 2.0, 30, 4};
  const auto index = TransitionIndex::build(g, params.p, params.q);
  const WalkCorpus one = generate_walks(index, g, params, 21, 1);
  for (std::size_t workers : {2u, 3u, 4u, 7u}) {
    const WalkCorpus many = generate_walks(index, g, params, 21, workers);
    EXPECT_EQ(one.nodes, many.nodes);
    EXPECT_EQ(one.offsets, many.offsets);
  }
  EXPECT_NE(one.nodes, generate_walks(index, g, params, 22, 1).nodes);
}

TEST(Context, MatchesBruteForceEnumeration) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<NodeId> walk(1 + rng.below(30));
    for (auto& x : walk) x = static_cast<NodeId>(rng.below(5));
    const std::size_t k = 1 + rng.below(6);
    for (WindowMode mode : {WindowMode::Symmetric, WindowMode::ForwardOnly}) {
      std::vector<std::pair<NodeId, NodeId>> want;
      for (std::size_t i = 0; i < walk.size(); ++i) {
        for (std::size_t j = 0; j < walk.size(); ++j) {
          const bool inside = mode == WindowMode::Symmetric ? (i != j && (i > j ? i - j : j - i) <= k)
                                                            : (j > i && j - i <= k);
          if (inside) want.emplace_back(walk[i], walk[j]);
        }
      }
      ASSERT_EQ(contexts_from_walk(walk, k, mode), want);
      ASSERT_EQ(context_pair_count(walk.size(), k, mode), want.size());
    }
  }
}

TEST(WalkIo, RoundTripAndErrors) {
  const Graph g = n2v::testing::lesmis(false);
  const auto index = TransitionIndex::build(g, 1, 0.5);
  const WalkCorpus c = generate_walks(index, g, WalkParams{1, 0.5, 12, 2}, 4);
  std::stringstream s;
  write_walks(s, c, g);
  const WalkCorpus back = read_walks(s, g);
  EXPECT_EQ(back.nodes, c.nodes);
  EXPECT_EQ(back.offsets, c.offsets);

  std::istringstream bad("Myriel Napoleon\nMyriel Nobody\n");
  try {
    read_walks(bad, g);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("Nobody"), std::string::npos);
  }
}
