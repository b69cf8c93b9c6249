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

#ifndef DPHC_GRAPH_HPP_
#define DPHC_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dphc/error.hpp"

namespace dphc {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  double weight;
};

/// Sorted set of distinct vertex labels.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> labels) : VertexSet(std::vector<Vertex>(labels)) {}
  explicit VertexSet(std::vector<Vertex> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  }

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
  [[nodiscard]] auto begin() const noexcept { return labels_.begin(); }
  [[nodiscard]] auto end() const noexcept { return labels_.end(); }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return labels_[i]; }
  [[nodiscard]] const std::vector<Vertex>& labels() const noexcept { return labels_; }
  [[nodiscard]] bool contains(Vertex v) const {
    return std::binary_search(labels_.begin(), labels_.end(), v);
  }

  /// Complement within {0..n-1}.
  [[nodiscard]] VertexSet complement(int n) const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(n) - std::min<std::size_t>(labels_.size(), n));
    std::size_t j = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (j < labels_.size() && labels_[j] == v) {
        ++j;
      } else {
        out.push_back(v);
      }
    }
    VertexSet result;
    result.labels_ = std::move(out);
    return result;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::vector<Vertex> labels_;
};

/// Undirected weighted graph on vertices 0..n-1. Immutable after construction;
/// edges are normalized to u < v and sorted by (u, v).
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    require(n >= 0, ErrorCode::kInvalidArgument, "vertex count must be nonnegative");
    for (auto& e : edges_) {
      require(e.u >= 0 && e.v >= 0 && e.u < n && e.v < n, ErrorCode::kEndpointOutOfRange,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") with n=" + std::to_string(n));
      require(e.u != e.v, ErrorCode::kSelfLoop, "vertex " + std::to_string(e.u));
      require(e.w >= 0.0 && !std::isnan(e.w), ErrorCode::kNegativeWeight,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      require(edges_[i].u != edges_[i - 1].u || edges_[i].v != edges_[i - 1].v, ErrorCode::kDuplicateEdge,
              "pair (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");
    }
    build_adjacency();
  }

  [[nodiscard]] int vertex_count() const noexcept { return n_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }

  [[nodiscard]] std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  /// Weighted degree.
  [[nodiscard]] double degree(Vertex v) const {
    double d = 0.0;
    for (const auto& nb : neighbors(v)) d += nb.weight;
    return d;
  }

  [[nodiscard]] double total_weight() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.w;
    return total;
  }

  /// Minimum edge weight; empty when the graph has no edges.
  [[nodiscard]] std::optional<double> min_weight() const {
    if (edges_.empty()) return std::nullopt;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& e : edges_) lo = std::min(lo, e.w);
    return lo;
  }

  /// Weight of edge {u, v}, or 0 when absent.
  [[nodiscard]] double weight(Vertex u, Vertex v) const {
    for (const auto& nb : neighbors(u)) {
      if (nb.vertex == v) return nb.weight;
    }
    return 0.0;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adjacency_[cursor[e.u]++] = {e.v, e.w};
      adjacency_[cursor[e.v]++] = {e.u, e.w};
    }
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Anything exposing a vertex count and an edge list. Algorithms that only
/// need to read the input once are written against this so tests can pass a
/// wrapper that audits weight access.
template <typename G>
concept EdgeSource = requires(const G& g) {
  { g.vertex_count() } -> std::convertible_to<int>;
  { g.edges() } -> std::convertible_to<std::span<const Edge>>;
};

namespace detail {

inline std::vector<char> membership(int n, const VertexSet& s) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) {
    require(v >= 0 && v < n, ErrorCode::kEndpointOutOfRange, "vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

}  // namespace detail

/// w(S, V \ S).
inline double cut_weight(const WeightedGraph& g, const VertexSet& s) {
  require(!s.empty() && s.size() < static_cast<std::size_t>(g.vertex_count()), ErrorCode::kEmptyOrFullSide,
          "cut side has " + std::to_string(s.size()) + " of " + std::to_string(g.vertex_count()) + " vertices");
  const auto in = detail::membership(g.vertex_count(), s);
  double total = 0.0;
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) total += e.w;
  }
  return total;
}

/// w(A, B) for disjoint A, B given as membership masks over the host graph.
inline double cross_weight(const WeightedGraph& g, const VertexSet& a, const VertexSet& b) {
  std::vector<char> side(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : a) side[v] = 1;
  for (Vertex v : b) side[v] = 2;
  double total = 0.0;
  for (const auto& e : g.edges()) {
    if (side[e.u] != 0 && side[e.v] != 0 && side[e.u] != side[e.v]) total += e.w;
  }
  return total;
}

struct InducedSubgraph {
  WeightedGraph graph;
  /// original[local] is the host-graph label of local vertex `local`.
  std::vector<Vertex> original;

  [[nodiscard]] Vertex local_of(Vertex host) const {
    auto it = std::lower_bound(original.begin(), original.end(), host);
    require(it != original.end() && *it == host, ErrorCode::kEndpointOutOfRange,
            "vertex " + std::to_string(host) + " not in subgraph");
    return static_cast<Vertex>(it - original.begin());
  }
};

/// G[S] relabeled densely in increasing host-label order.
inline InducedSubgraph induced_subgraph(const WeightedGraph& g, const VertexSet& s) {
  require(!s.empty(), ErrorCode::kEmptySet, "induced subgraph of an empty set");
  std::vector<Vertex> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i] >= 0 && s[i] < g.vertex_count(), ErrorCode::kEndpointOutOfRange,
            "vertex " + std::to_string(s[i]));
    local[s[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (Vertex v : s) {
    for (const auto& nb : g.neighbors(v)) {
      if (nb.vertex > v && local[nb.vertex] >= 0) edges.push_back({local[v], local[nb.vertex], nb.weight});
    }
  }
  return {WeightedGraph(static_cast<int>(s.size()), std::move(edges)), s.labels()};
}

/// Connected components, ordered by smallest member. With `positive_only`,
/// zero-weight edges are treated as absent.
inline std::vector<VertexSet> connected_components(const WeightedGraph& g, bool positive_only = false) {
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(parts.size());
    parts.emplace_back();
    comp[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      parts[id].push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        if (positive_only && !(nb.weight > 0.0)) continue;
        if (comp[nb.vertex] < 0) {
          comp[nb.vertex] = id;
          stack.push_back(nb.vertex);
        }
      }
    }
  }
  std::vector<VertexSet> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.emplace_back(std::move(p));
  return out;
}

inline bool is_connected(const WeightedGraph& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

/// Same topology with replacement weights (one per edge, in edge order).
inline WeightedGraph with_weights(const WeightedGraph& g, std::span<const double> weights) {
  require(weights.size() == g.edge_count(), ErrorCode::kInvalidArgument, "weight vector length mismatch");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].w = weights[i];
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

}  // namespace dphc

#endif  // DPHC_GRAPH_HPP_
