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

#include <sstream>

#include "dphc/graph.hpp"
#include "dphc/graph_io.hpp"
#include "oracles.hpp"

namespace dphc {
namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.cause();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kInvalidArgument;
}

TEST(Graph, SmallestGraph) {
  WeightedGraph g(2, {{0, 1, 4.0}});
  EXPECT_EQ(g.vertex_count(), 2);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.min_weight(), 4.0);
}

TEST(Graph, RejectsMalformedEdges) {
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 1, 1}, {1, 0, 1}}); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{1, 1, 1}}); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 1, -0.5}}); }), ErrorCode::kNegativeWeight);
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 3, 1}}); }), ErrorCode::kEndpointOutOfRange);
}

TEST(Graph, NormalizesEdgeOrder) {
  WeightedGraph g(4, {{3, 0, 1}, {2, 1, 2}, {1, 0, 3}});
  ASSERT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 3}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 3, 1}));
  EXPECT_EQ(g.edges()[2], (Edge{1, 2, 2}));
  EXPECT_EQ(g.weight(3, 0), 1.0);
  EXPECT_EQ(g.weight(2, 3), 0.0);
  EXPECT_FALSE(WeightedGraph(3, {}).min_weight().has_value());
}

TEST(Graph, CutWeightExamples) {
  const auto c4 = oracle::cycle(4);
  EXPECT_EQ(c4.edge_count(), 4u);
  EXPECT_DOUBLE_EQ(cut_weight(c4, {0, 1}), 2.0);
  EXPECT_DOUBLE_EQ(cut_weight(oracle::complete(4), {0, 1}), 4.0);
  EXPECT_DOUBLE_EQ(cut_weight(oracle::path(3), {1}), 2.0);
  EXPECT_EQ(code_of([&] { (void)cut_weight(c4, {}); }), ErrorCode::kEmptyOrFullSide);
  EXPECT_EQ(code_of([&] { (void)cut_weight(c4, {0, 1, 2, 3}); }), ErrorCode::kEmptyOrFullSide);
}

TEST(Graph, CutWeightIsSymmetricExhaustively) {
  const int n = 10;
  const auto g = oracle::random_graph(n, 0.5, 0.5, 3.0, 17);
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<Vertex> s;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v) & 1) s.push_back(v);
    }
    const VertexSet side(s);
    ASSERT_NEAR(cut_weight(g, side), cut_weight(g, side.complement(n)), 1e-9);
  }
}

TEST(Graph, PartitionWeightsSumToTotal) {
  const int n = 12;
  const auto g = oracle::random_graph(n, 0.4, 1.0, 5.0, 3);
  SeededRng rng(8);
  std::vector<int> part(n);
  for (int& p : part) p = static_cast<int>(rng.below(4));
  double intra = 0.0, inter = 0.0;
  for (const auto& e : g.edges()) (part[e.u] == part[e.v] ? intra : inter) += e.w;
  double induced = 0.0;
  for (int p = 0; p < 4; ++p) {
    std::vector<Vertex> members;
    for (int v = 0; v < n; ++v) {
      if (part[v] == p) members.push_back(v);
    }
    if (!members.empty()) induced += induced_subgraph(g, VertexSet(members)).graph.total_weight();
  }
  EXPECT_NEAR(induced, intra, 1e-9);
  EXPECT_NEAR(intra + inter, g.total_weight(), 1e-9);
}

TEST(Graph, InducedSubgraphExamples) {
  const auto c4 = oracle::cycle(4);
  const auto sub = induced_subgraph(c4, {0, 1, 2});
  EXPECT_EQ(sub.graph.vertex_count(), 3);
  EXPECT_EQ(sub.graph.edge_count(), 2u);

  const auto k4 = oracle::complete(4);
  const auto pair = induced_subgraph(k4, {0, 2});
  ASSERT_EQ(pair.graph.edge_count(), 1u);
  EXPECT_EQ(pair.graph.edges()[0].w, 1.0);
  EXPECT_EQ(pair.original, (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(pair.local_of(2), 1);

  const auto g = oracle::random_graph(8, 0.6, 1.0, 9.0, 5);
  const auto full = induced_subgraph(g, VertexSet({0, 1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(full.graph, g);
  EXPECT_EQ(code_of([&] { (void)induced_subgraph(g, {}); }), ErrorCode::kEmptySet);
}

TEST(Graph, InducedSubgraphKeepsWeightsExactly) {
  const auto g = oracle::random_graph(15, 0.5, 0.1, 7.0, 11);
  const VertexSet s({1, 4, 5, 8, 9, 13});
  const auto sub = induced_subgraph(g, s);
  std::size_t expected = 0;
  for (const auto& e : g.edges()) {
    if (!s.contains(e.u) || !s.contains(e.v)) continue;
    ++expected;
    EXPECT_EQ(sub.graph.weight(sub.local_of(e.u), sub.local_of(e.v)), e.w);
  }
  EXPECT_EQ(sub.graph.edge_count(), expected);
}

TEST(Graph, Components) {
  WeightedGraph g(5, {{0, 1, 1}, {3, 4, 0}});
  EXPECT_EQ(connected_components(g).size(), 3u);
  EXPECT_EQ(connected_components(g, true).size(), 4u);
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(is_connected(oracle::cycle(5)));
}

TEST(GraphIo, ReadsAndRejects) {
  const auto g = parse_graph("2 1\n0 1 4.0\n");
  EXPECT_EQ(g.vertex_count(), 2);
  EXPECT_EQ(g.edges()[0].w, 4.0);
  EXPECT_EQ(parse_graph("# comment\n3 1\n# another\n1 2 0.5\n").edge_count(), 1u);

  try {
    (void)parse_graph("2 1\n0 0 1.0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.cause(), ErrorCode::kSelfLoop);
    EXPECT_EQ(e.location(), 2u);
  }
  EXPECT_EQ(code_of([] { (void)parse_graph("2 1 7\n0 1 1\n"); }), ErrorCode::kInvalidHeader);
  EXPECT_EQ(code_of([] { (void)parse_graph(""); }), ErrorCode::kInvalidHeader);
  EXPECT_EQ(code_of([] { (void)parse_graph("3 2\n0 1 1\n1 0 1\n"); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] { (void)parse_graph("3 1\n0 5 1\n"); }), ErrorCode::kEndpointOutOfRange);
  EXPECT_EQ(code_of([] { (void)parse_graph("3 1\n0 1 x\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { (void)parse_graph("3 2\n0 1 1\n"); }), ErrorCode::kParseError);
}

TEST(GraphIo, RoundTrip) {
  auto g = oracle::random_graph(30, 0.3, 0.0, 100.0, 42);
  while (g.edge_count() > 100) {
    std::vector<Edge> edges(g.edges().begin(), g.edges().end() - 1);
    g = WeightedGraph(30, edges);
  }
  ASSERT_EQ(g.edge_count(), 100u);
  std::ostringstream out;
  write_graph(g, out);
  const auto back = parse_graph(out.str());
  EXPECT_EQ(back, g);
  std::ostringstream again;
  write_graph(back, again);
  EXPECT_EQ(again.str(), out.str());
}

}  // namespace
}  // namespace dphc
