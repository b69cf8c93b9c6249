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

#ifndef DPHC_TREE_SEARCH_HPP_
#define DPHC_TREE_SEARCH_HPP_

#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "dphc/cuts.hpp"
#include "dphc/error.hpp"
#include "dphc/graph.hpp"
#include "dphc/hctree.hpp"

namespace dphc {

template <typename F>
concept CutFunction = std::invocable<F&, const WeightedGraph&> &&
                      std::convertible_to<std::invoke_result_t<F&, const WeightedGraph&>, CutResult>;

namespace detail {

template <typename CutFn>
HcTree make_tree_rec(const WeightedGraph& g, const std::vector<Vertex>& labels, CutFn& cut_fn) {
  const int n = g.vertex_count();
  if (n == 1) return HcTree::leaf(labels[0]);
  const CutResult cut = cut_fn(g);
  require(!cut.side.empty() && cut.side.size() < static_cast<std::size_t>(n), ErrorCode::kEmptyOrFullSide,
          "cut function returned an improper side");
  const VertexSet other = cut.side.complement(n);
  auto map_back = [&](const InducedSubgraph& sub) {
    std::vector<Vertex> out;
    out.reserve(sub.original.size());
    for (Vertex v : sub.original) out.push_back(labels[v]);
    return out;
  };
  const auto left = induced_subgraph(g, cut.side);
  const auto right = induced_subgraph(g, other);
  HcTree lt = make_tree_rec(left.graph, map_back(left), cut_fn);
  HcTree rt = make_tree_rec(right.graph, map_back(right), cut_fn);
  return HcTree::join(lt, rt);
}

}  // namespace detail

/// Recursive partitioning: a singleton is a leaf; otherwise split by
/// `cut_fn` (side first) and recurse on both induced subgraphs.
template <CutFunction CutFn>
HcTree make_tree(const WeightedGraph& g, CutFn&& cut_fn) {
  require(g.vertex_count() >= 1, ErrorCode::kEmptySet, "cannot build a tree over zero vertices");
  std::vector<Vertex> labels(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) labels[v] = v;
  return detail::make_tree_rec(g, labels, cut_fn);
}

struct OptimalTree {
  HcTree tree;
  double cost = 0.0;
};

/// Exact minimum Dasgupta cost by dynamic programming over vertex subsets:
///   OPT(S) = min over bipartitions (A, S\A) of |S| w(A, S\A) + OPT(A) + OPT(S\A).
/// O(3^n) time, n <= 14.
inline OptimalTree brute_force_optimal_tree(const WeightedGraph& g) {
  const int n = g.vertex_count();
  require(n >= 1, ErrorCode::kEmptySet, "empty graph");
  require(n <= 14, ErrorCode::kTooLargeForOracle, "subset DP supports n <= 14, got " + std::to_string(n));
  const std::uint32_t full = (1u << n) - 1;
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (const auto& e : g.edges()) w[e.u * n + e.v] = w[e.v * n + e.u] = e.w;

  std::vector<double> inner(std::size_t{full} + 1, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int v = std::countr_zero(mask);
    std::uint32_t rest = mask & (mask - 1);
    double sum = inner[rest];
    for (std::uint32_t r = rest; r; r &= r - 1) sum += w[v * n + std::countr_zero(r)];
    inner[mask] = sum;
  }

  std::vector<double> opt(std::size_t{full} + 1, 0.0);
  std::vector<std::uint32_t> split(std::size_t{full} + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::has_single_bit(mask)) continue;
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    const double size = std::popcount(mask);
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_a = 0;
    // Submasks A of `mask` that contain the lowest bit, excluding mask itself.
    for (std::uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const std::uint32_t a = sub | low;
      const std::uint32_t b = mask ^ a;
      const double crossing = inner[mask] - inner[a] - inner[b];
      const double value = size * crossing + opt[a] + opt[b];
      if (best_a == 0 || value < best - 1e-12 * std::abs(best)) {
        best = value;
        best_a = a;
      }
      if (sub == 0) break;
    }
    opt[mask] = best;
    split[mask] = best_a;
  }

  auto build = [&](auto&& self, std::uint32_t mask) -> HcTree {
    if (std::has_single_bit(mask)) return HcTree::leaf(std::countr_zero(mask));
    const std::uint32_t a = split[mask];
    return HcTree::join(self(self, a), self(self, mask ^ a));
  };
  HcTree tree = build(build, full);
  // Report the cost of the witness itself so the two agree bit-for-bit.
  return {tree, dasgupta_cost(g, tree)};
}

/// (2n-3)!! distinct leaf-labeled binary trees on n >= 2 leaves (1 for n = 1).
constexpr std::uint64_t tree_count(int n) {
  std::uint64_t count = 1;
  for (int k = 3; k <= 2 * n - 3; k += 2) count *= static_cast<std::uint64_t>(k);
  return count;
}

inline constexpr int kMaxEnumerationLeaves = 10;

/// Lazily walks every leaf-labeled binary tree on n <= 10 leaves exactly once,
/// by inserting leaf k above each node of every tree on leaves 0..k-1.
class TreeEnumerator {
 public:
  explicit TreeEnumerator(int n) : n_(n) {
    require(n >= 1, ErrorCode::kEmptySet, "need at least one leaf");
    require(n <= kMaxEnumerationLeaves, ErrorCode::kTooLargeForEnumeration,
            "tree enumeration supports n <= " + std::to_string(kMaxEnumerationLeaves) + ", got " + std::to_string(n));
    const std::size_t nodes = 2 * static_cast<std::size_t>(n) - 1;
    parent_.assign(nodes, -1);
    left_.assign(nodes, -1);
    right_.assign(nodes, -1);
    mask_.assign(nodes, 0);
    for (int v = 0; v < n; ++v) mask_[v] = 1u << v;
  }

  /// Calls fn(*this) once per tree.
  template <typename Fn>
  void run(Fn&& fn) {
    if (n_ == 1) {
      root_ = 0;
      fn(*this);
      return;
    }
    const int p = n_;
    left_[p] = 0;
    right_[p] = 1;
    parent_[0] = parent_[1] = p;
    parent_[p] = -1;
    mask_[p] = 0b11;
    root_ = p;
    insert_from(2, fn);
  }

  [[nodiscard]] int leaf_count() const noexcept { return n_; }

  /// Leaves under the lowest common ancestor of leaves u and v.
  [[nodiscard]] int lca_size(Vertex u, Vertex v) const {
    int x = parent_[u];
    while (!(mask_[x] & (1u << v))) x = parent_[x];
    return std::popcount(mask_[x]);
  }

  [[nodiscard]] double cost(const WeightedGraph& g) const {
    double total = 0.0;
    for (const auto& e : g.edges()) total += e.w * lca_size(e.u, e.v);
    return total;
  }

  [[nodiscard]] HcTree materialize() const {
    std::vector<HcTree::Node> nodes(2 * static_cast<std::size_t>(n_) - 1);
    for (int v = 0; v < n_; ++v) nodes[v] = {-1, -1, v, 1};
    for (std::size_t x = n_; x < nodes.size(); ++x) nodes[x] = {left_[x], right_[x], -1, 0};
    return HcTree(std::move(nodes), root_);
  }

 private:
  template <typename Fn>
  void insert_from(int k, Fn& fn) {
    if (k == n_) {
      fn(*this);
      return;
    }
    const int p = n_ + k - 1;  // new internal node
    const std::uint32_t bit = 1u << k;
    // Existing nodes: leaves 0..k-1 and internal nodes n..n+k-2.
    for (int i = 0; i < 2 * k - 1; ++i) {
      const int x = i < k ? i : n_ + (i - k);
      const int up = parent_[x];
      left_[p] = x;
      right_[p] = k;
      parent_[p] = up;
      parent_[x] = p;
      parent_[k] = p;
      mask_[p] = mask_[x] | bit;
      if (up < 0) {
        root_ = p;
      } else {
        (left_[up] == x ? left_[up] : right_[up]) = p;
      }
      for (int a = up; a >= 0; a = parent_[a]) mask_[a] |= bit;

      insert_from(k + 1, fn);

      for (int a = up; a >= 0; a = parent_[a]) mask_[a] &= ~bit;
      if (up < 0) {
        root_ = x;
      } else {
        (left_[up] == p ? left_[up] : right_[up]) = x;
      }
      parent_[x] = up;
      parent_[k] = -1;
      parent_[p] = -1;
    }
  }

  int n_;
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<int> left_;
  std::vector<int> right_;
  std::vector<std::uint32_t> mask_;
};

/// Calls fn(const HcTree&) for every tree on n <= 10 leaves.
template <typename Fn>
void enumerate_all_trees(int n, Fn&& fn) {
  TreeEnumerator walker(n);
  walker.run([&](const TreeEnumerator& state) { fn(state.materialize()); });
}

}  // namespace dphc

#endif  // DPHC_TREE_SEARCH_HPP_
