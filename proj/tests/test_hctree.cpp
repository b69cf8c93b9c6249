// Copyright 2026 The dphc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "dphc/cuts.hpp"
#include "dphc/generators.hpp"
#include "dphc/hctree.hpp"
#include "dphc/tree_search.hpp"
#include "oracles.hpp"

namespace dphc {
namespace {

HcTree L(Vertex v) { return HcTree::leaf(v); }
HcTree J(const HcTree& a, const HcTree& b) { return HcTree::join(a, b); }

// Converts to the oracle's pointer tree so costs can be checked independently.
oracle::Tree to_oracle(const HcTree& t, int x) {
  const auto& node = t.node(x);
  if (node.left < 0) return oracle::leaf(node.label);
  return oracle::join(to_oracle(t, node.left), to_oracle(t, node.right));
}
oracle::Tree to_oracle(const HcTree& t) { return to_oracle(t, t.root()); }

TEST(HcTree, ValidatesShape) {
  using N = HcTree::Node;
  EXPECT_NO_THROW(HcTree({N{-1, -1, 0, 1}, N{-1, -1, 1, 1}, N{0, 1, -1, 0}}, 2));
  EXPECT_THROW(HcTree({N{-1, -1, 0, 1}, N{-1, -1, 0, 1}, N{0, 1, -1, 0}}, 2), Error);  // repeated label
  EXPECT_THROW(HcTree({N{-1, -1, 0, 1}, N{-1, -1, 1, 1}, N{0, 0, -1, 0}}, 2), Error);  // child reused
  EXPECT_THROW(J(L(1), L(1)), Error);
  const auto t = J(L(2), J(L(0), L(1)));
  EXPECT_EQ(t.leaf_count(), 3);
  EXPECT_TRUE(t.covers(3));
  EXPECT_FALSE(t.covers(4));
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(serialize_tree(t.canonical()), "((0,1),2)");
}

TEST(DasguptaCost, Examples) {
  const WeightedGraph edge(2, {{0, 1, 4.0}});
  EXPECT_EQ(dasgupta_cost(edge, J(L(0), L(1))), 8.0);

  const auto k3 = oracle::complete(3);
  EXPECT_EQ(dasgupta_cost(k3, J(L(0), J(L(1), L(2)))), 8.0);
  EXPECT_EQ(dasgupta_cost(k3, J(L(1), J(L(0), L(2)))), 8.0);
  EXPECT_EQ(dasgupta_cost(k3, J(L(2), J(L(0), L(1)))), 8.0);

  const auto p3 = oracle::path(3);
  EXPECT_EQ(dasgupta_cost(p3, J(L(0), J(L(1), L(2)))), 5.0);
  EXPECT_EQ(dasgupta_cost(p3, J(L(1), J(L(0), L(2)))), 6.0);
  EXPECT_THROW((void)dasgupta_cost(p3, J(L(0), L(1))), Error);
}

TEST(DasguptaCost, MatchesSplitDecompositionAndBounds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 30);
    const auto g = oracle::random_graph(n, 0.4, 0.0, 3.0, seed);
    SeededRng rng(seed);
    const auto tree = random_tree(n, rng);
    const double cost = dasgupta_cost(g, tree);
    EXPECT_NEAR(cost, oracle::split_cost(g, to_oracle(tree)), 1e-9 * std::max(1.0, cost));
    EXPECT_GE(cost, 2.0 * g.total_weight() - 1e-9);
    EXPECT_LE(cost, n * g.total_weight() + 1e-9);
  }
}

TEST(MakeTree, Examples) {
  auto never = [](const WeightedGraph&) -> CutResult { throw std::logic_error("not called"); };
  EXPECT_EQ(make_tree(WeightedGraph(1, {}), never), L(0));

  auto weird = [](const WeightedGraph& g) { return make_cut_result(g, VertexSet{1}); };
  EXPECT_EQ(make_tree(WeightedGraph(2, {}), weird).canonical(), J(L(0), L(1)));

  auto exact = [](const WeightedGraph& g) { return brute_force_balanced_sparsest_cut(g); };
  const auto p3 = make_tree(oracle::path(3), exact);
  EXPECT_EQ(serialize_tree(p3), "(0,(1,2))");
  EXPECT_EQ(dasgupta_cost(oracle::path(3), p3), 5.0);

  auto bad = [](const WeightedGraph& g) {
    std::vector<Vertex> all(static_cast<std::size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v) all[v] = v;
    return CutResult{VertexSet(all), 0, 0, 0};
  };
  EXPECT_THROW(make_tree(oracle::path(3), bad), Error);
}

TEST(MakeTree, BalancedSplitsWithBalancedCuts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(30, 0.2, 0.5, 2.0, seed);
    SeededRng rng(seed);
    const auto tree = make_tree(g, [&](const WeightedGraph& h) { return balanced_sparsest_cut(h, rng); });
    ASSERT_TRUE(tree.covers(30));
    for (std::size_t x = 0; x < tree.node_count(); ++x) {
      const auto& node = tree.node(static_cast<int>(x));
      if (node.left < 0 || node.size < 3) continue;
      const int smaller = std::min(tree.node(node.left).size, tree.node(node.right).size);
      EXPECT_GE(smaller, (node.size + 2) / 3) << "node of size " << node.size;
    }
  }
}

TEST(MakeTree, SplitsRecordedByCutFunction) {
  // Every internal split must be a cut_fn output on the induced subgraph.
  const auto g = oracle::random_graph(12, 0.5, 1.0, 3.0, 77);
  auto exact = [&](const WeightedGraph& h) { return brute_force_balanced_sparsest_cut(h); };
  const auto tree = make_tree(g, exact);
  for (std::size_t x = 0; x < tree.node_count(); ++x) {
    const auto& node = tree.node(static_cast<int>(x));
    if (node.left < 0) continue;
    const VertexSet host(tree.leaves(static_cast<int>(x)));
    const VertexSet left(tree.leaves(node.left));
    const auto sub = induced_subgraph(g, host);
    const auto cut = brute_force_balanced_sparsest_cut(sub.graph);
    std::vector<Vertex> mapped;
    for (Vertex v : cut.side) mapped.push_back(sub.original[v]);
    EXPECT_EQ(VertexSet(mapped), left);
  }
}

TEST(OptimalTree, Examples) {
  const auto p4 = brute_force_optimal_tree(oracle::path(4));
  EXPECT_EQ(p4.cost, 8.0);
  EXPECT_EQ(serialize_tree(p4.tree.canonical()), "((0,1),(2,3))");
  // Unit 5-cycle: the split {0,1} | {2,3,4} gives 10 + 2 + 3 + 2 = 17; the
  // one-vertex-per-level peel order costs 10 + 4 + 3 + 2 = 19.
  EXPECT_EQ(oracle::optimal_cost_by_enumeration(oracle::cycle(5)), 17.0);
  EXPECT_EQ(brute_force_optimal_tree(oracle::cycle(5)).cost, 17.0);
  EXPECT_EQ(dasgupta_cost(oracle::cycle(5), parse_tree("(0,(1,(2,(3,4))))")), 19.0);
  EXPECT_EQ(brute_force_optimal_tree(oracle::complete(3)).cost, 8.0);
  EXPECT_EQ(brute_force_optimal_tree(WeightedGraph(1, {})).cost, 0.0);
  EXPECT_THROW(brute_force_optimal_tree(oracle::cycle(15)), Error);
}

TEST(OptimalTree, MatchesEnumerationOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const auto g = oracle::random_graph(n, 0.6, 0.0, 5.0, 500 + seed);
    const auto opt = brute_force_optimal_tree(g);
    EXPECT_NEAR(opt.cost, oracle::optimal_cost_by_enumeration(g), 1e-9 * std::max(1.0, opt.cost));
    EXPECT_EQ(opt.cost, dasgupta_cost(g, opt.tree));
  }
}

TEST(OptimalTree, NoTreeBeatsOracleExhaustively) {
  for (int n = 2; n <= 7; ++n) {
    const auto g = oracle::random_graph(n, 0.7, 0.5, 3.0, 40 + n);
    const double opt = brute_force_optimal_tree(g).cost;
    std::size_t seen = 0;
    enumerate_all_trees(n, [&](const HcTree& t) {
      ++seen;
      EXPECT_GE(dasgupta_cost(g, t), opt - 1e-9 * opt);
    });
    EXPECT_EQ(seen, tree_count(n));
  }
}

TEST(Enumeration, CountsAndDistinctness) {
  EXPECT_EQ(tree_count(1), 1u);
  EXPECT_EQ(tree_count(2), 1u);
  EXPECT_EQ(tree_count(3), 3u);
  EXPECT_EQ(tree_count(5), 105u);
  EXPECT_EQ(tree_count(10), 34459425u);
  for (int n = 1; n <= 7; ++n) {
    std::set<std::string> distinct;
    std::size_t count = 0;
    enumerate_all_trees(n, [&](const HcTree& t) {
      ASSERT_TRUE(t.covers(n));
      distinct.insert(serialize_tree(t.canonical()));
      ++count;
    });
    EXPECT_EQ(count, tree_count(n));
    EXPECT_EQ(distinct.size(), count);
    EXPECT_EQ(oracle::all_trees(n).size(), count);
  }
  EXPECT_THROW(TreeEnumerator(11), Error);
}

TEST(Enumeration, WalkerCostMatchesMaterializedCost) {
  const auto g = oracle::random_graph(7, 0.6, 1.0, 4.0, 3);
  TreeEnumerator walker(7);
  walker.run([&](const TreeEnumerator& state) {
    const auto t = state.materialize();
    ASSERT_NEAR(state.cost(g), dasgupta_cost(g, t), 1e-9);
  });
}

TEST(Serialize, Examples) {
  EXPECT_EQ(serialize_tree(L(0)), "0");
  EXPECT_EQ(serialize_tree(J(L(0), L(1))), "(0,1)");
  EXPECT_EQ(serialize_tree(parse_tree("((0,1),(2,(3,4)))")), "((0,1),(2,(3,4)))");
  EXPECT_EQ(serialize_tree(parse_tree(" ( 1 , 0 ) ")), "(1,0)");
}

TEST(Serialize, ParseErrorsCarryPosition) {
  auto position = [](const std::string& text) -> std::size_t {
    try {
      (void)parse_tree(text);
    } catch (const ParseError& e) {
      return e.location();
    }
    ADD_FAILURE() << text;
    return 0;
  };
  EXPECT_EQ(position("(0,1"), 4u);
  EXPECT_EQ(position("(0;1)"), 2u);
  EXPECT_EQ(position("x"), 0u);
  EXPECT_EQ(position("(0,1))"), 5u);
  EXPECT_THROW((void)parse_tree("(0,0)"), ParseError);
}

TEST(Serialize, RandomRoundTrip) {
  SeededRng rng(2026);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng.below(20));
    const auto t = random_tree(n, rng);
    const auto text = serialize_tree(t);
    EXPECT_EQ(parse_tree(text), t) << text;
    EXPECT_EQ(serialize_tree(parse_tree(text)), text);
  }
}

TEST(Sensitivity, Examples) {
  const WeightedGraph edge(2, {{0, 1, 4.0}});
  const auto t = J(L(0), L(1));
  EXPECT_EQ(cost_sensitivity_check(edge, std::vector<double>{0.0}, t), 0.0);
  EXPECT_EQ(cost_sensitivity_check(edge, std::vector<double>{1.0}, t), 2.0);
  EXPECT_THROW(cost_sensitivity_check(edge, std::vector<double>{-5.0}, t), Error);
}

TEST(Sensitivity, BoundedByNTimesL1) {
  SeededRng rng(19);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const auto g = oracle::random_graph(n, 0.6, 1.0, 3.0, 900 + i);
    if (g.edge_count() == 0) continue;
    const auto tree = random_tree(n, rng);
    std::vector<double> delta(g.edge_count(), 0.0);
    double budget = 1.0;
    for (double& d : delta) {
      d = rng.uniform(-budget, budget);
      budget -= std::abs(d);
    }
    double l1 = 0.0;
    for (double d : delta) l1 += std::abs(d);
    ASSERT_LE(l1, 1.0 + 1e-12);
    EXPECT_LE(cost_sensitivity_check(g, delta, tree), n * l1 + 1e-9);
  }
}

}  // namespace
}  // namespace dphc
