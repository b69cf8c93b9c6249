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

#ifndef DPHC_HCTREE_HPP_
#define DPHC_HCTREE_HPP_

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dphc/error.hpp"
#include "dphc/graph.hpp"

namespace dphc {

/// Rooted binary dendrogram whose leaves carry distinct vertex labels.
///
/// Nodes are stored in a flat array; every internal node has exactly two
/// children. Child order is kept (it is what the text form prints) but does not
/// change the hierarchy; use `canonical()` to compare hierarchies.
class HcTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    Vertex label = -1;  // leaves only
    int size = 1;       // number of leaves below
  };

  HcTree() : HcTree(leaf(0)) {}

  /// Validates shape: one root, every node reached exactly once, internal
  /// nodes binary, leaf labels distinct and nonnegative.
  HcTree(std::vector<Node> nodes, int root) : nodes_(std::move(nodes)), root_(root) { validate(); }

  static HcTree leaf(Vertex label) {
    require(label >= 0, ErrorCode::kInvalidArgument, "negative leaf label");
    HcTree t(0);
    t.nodes_.push_back({-1, -1, label, 1});
    t.root_ = 0;
    return t;
  }

  /// Tree whose root has `left` and `right` as its two subtrees.
  static HcTree join(const HcTree& left, const HcTree& right) {
    HcTree t(0);
    t.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
    t.nodes_ = left.nodes_;
    const int offset = static_cast<int>(left.nodes_.size());
    for (Node n : right.nodes_) {
      if (n.left >= 0) {
        n.left += offset;
        n.right += offset;
      }
      t.nodes_.push_back(n);
    }
    t.nodes_.push_back({left.root_, right.root_ + offset, -1, left.leaf_count() + right.leaf_count()});
    t.root_ = static_cast<int>(t.nodes_.size()) - 1;
    t.check_distinct_labels();
    return t;
  }

  [[nodiscard]] int root() const noexcept { return root_; }
  [[nodiscard]] const Node& node(int id) const { return nodes_[id]; }
  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] int leaf_count() const { return nodes_[root_].size; }
  [[nodiscard]] bool is_leaf(int id) const { return nodes_[id].left < 0; }

  /// Leaf labels under `id`, in left-to-right order.
  [[nodiscard]] std::vector<Vertex> leaves(int id) const {
    std::vector<Vertex> out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (is_leaf(x)) {
        out.push_back(nodes_[x].label);
      } else {
        stack.push_back(nodes_[x].right);
        stack.push_back(nodes_[x].left);
      }
    }
    return out;
  }
  [[nodiscard]] std::vector<Vertex> leaves() const { return leaves(root_); }

  /// Longest root-to-leaf path, in edges.
  [[nodiscard]] int depth() const {
    int best = 0;
    std::vector<std::pair<int, int>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto [x, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      if (!is_leaf(x)) {
        stack.push_back({nodes_[x].left, d + 1});
        stack.push_back({nodes_[x].right, d + 1});
      }
    }
    return best;
  }

  /// True iff the leaf labels are exactly {0..n-1}.
  [[nodiscard]] bool covers(int n) const {
    if (leaf_count() != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& node : nodes_) {
      if (node.left >= 0) continue;
      if (node.label >= n || seen[node.label]) return false;
      seen[node.label] = 1;
    }
    return true;
  }

  /// Same hierarchy with each node's children ordered by smallest leaf label.
  [[nodiscard]] HcTree canonical() const {
    auto build = [&](auto&& self, int x) -> std::pair<HcTree, Vertex> {
      if (is_leaf(x)) return {leaf(nodes_[x].label), nodes_[x].label};
      auto a = self(self, nodes_[x].left);
      auto b = self(self, nodes_[x].right);
      if (b.second < a.second) std::swap(a, b);
      return {join(a.first, b.first), a.second};
    };
    return build(build, root_).first;
  }

  /// Ordered structural equality.
  friend bool operator==(const HcTree& a, const HcTree& b) { return equal_at(a, a.root_, b, b.root_); }

 private:
  explicit HcTree(int) {}

  static bool equal_at(const HcTree& a, int x, const HcTree& b, int y) {
    const Node& p = a.nodes_[x];
    const Node& q = b.nodes_[y];
    if ((p.left < 0) != (q.left < 0)) return false;
    if (p.left < 0) return p.label == q.label;
    return p.size == q.size && equal_at(a, p.left, b, q.left) && equal_at(a, p.right, b, q.right);
  }

  void check_distinct_labels() const {
    std::vector<Vertex> labels;
    for (const auto& node : nodes_) {
      if (node.left < 0) labels.push_back(node.label);
    }
    std::sort(labels.begin(), labels.end());
    require(std::adjacent_find(labels.begin(), labels.end()) == labels.end(), ErrorCode::kInvalidArgument,
            "duplicate leaf label in tree");
  }

  void validate() {
    const int count = static_cast<int>(nodes_.size());
    require(count > 0 && root_ >= 0 && root_ < count, ErrorCode::kInvalidArgument, "tree root out of range");
    std::vector<char> visited(nodes_.size(), 0);
    // Post-order to fill sizes.
    std::vector<std::pair<int, bool>> stack{{root_, false}};
    while (!stack.empty()) {
      auto [x, expanded] = stack.back();
      stack.pop_back();
      Node& node = nodes_[x];
      if (expanded) {
        node.size = nodes_[node.left].size + nodes_[node.right].size;
        continue;
      }
      require(!visited[x], ErrorCode::kInvalidArgument, "tree node reached twice");
      visited[x] = 1;
      const bool has_left = node.left >= 0;
      const bool has_right = node.right >= 0;
      require(has_left == has_right, ErrorCode::kInvalidArgument, "tree node with exactly one child");
      if (!has_left) {
        require(node.label >= 0, ErrorCode::kInvalidArgument, "leaf without label");
        node.size = 1;
        continue;
      }
      require(node.left < count && node.right < count, ErrorCode::kInvalidArgument, "child index out of range");
      stack.push_back({x, true});
      stack.push_back({node.right, false});
      stack.push_back({node.left, false});
    }
    require(std::all_of(visited.begin(), visited.end(), [](char c) { return c != 0; }), ErrorCode::kInvalidArgument,
            "unreachable tree node");
    check_distinct_labels();
  }

  std::vector<Node> nodes_;
  int root_ = 0;
};

/// Constant-time lowest-common-ancestor queries over leaf labels
/// (Euler tour plus sparse table).
class LcaIndex {
 public:
  explicit LcaIndex(const HcTree& tree) : tree_(&tree) {
    int max_label = 0;
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
      if (tree.is_leaf(static_cast<int>(i))) max_label = std::max(max_label, tree.node(static_cast<int>(i)).label);
    }
    leaf_first_.assign(static_cast<std::size_t>(max_label) + 1, -1);
    std::vector<int> depth(tree.node_count(), 0);
    // Iterative Euler tour.
    std::vector<std::pair<int, int>> stack{{tree.root(), 0}};
    while (!stack.empty()) {
      auto& [x, state] = stack.back();
      const auto& node = tree.node(x);
      euler_.push_back(x);
      euler_depth_.push_back(depth[x]);
      if (node.left < 0) {
        leaf_first_[node.label] = static_cast<int>(euler_.size()) - 1;
        stack.pop_back();
        continue;
      }
      if (state == 2) {
        stack.pop_back();
        continue;
      }
      int child = state == 0 ? node.left : node.right;
      ++state;
      depth[child] = depth[x] + 1;
      stack.push_back({child, 0});
    }
    build_sparse_table();
  }

  /// Node id of the lowest common ancestor of leaves `u` and `v`.
  [[nodiscard]] int lca(Vertex u, Vertex v) const {
    int a = leaf_first_[u];
    int b = leaf_first_[v];
    if (a > b) std::swap(a, b);
    const int k = std::bit_width(static_cast<unsigned>(b - a + 1)) - 1;
    const int i = table_[k][a];
    const int j = table_[k][b - (1 << k) + 1];
    return euler_depth_[i] <= euler_depth_[j] ? euler_[i] : euler_[j];
  }

  /// |T[u v v]|: leaves under the lowest common ancestor.
  [[nodiscard]] int lca_size(Vertex u, Vertex v) const { return tree_->node(lca(u, v)).size; }

 private:
  void build_sparse_table() {
    const int len = static_cast<int>(euler_.size());
    const int levels = std::bit_width(static_cast<unsigned>(len));
    table_.assign(static_cast<std::size_t>(levels), std::vector<int>(static_cast<std::size_t>(len)));
    for (int i = 0; i < len; ++i) table_[0][i] = i;
    for (int k = 1; k < levels; ++k) {
      for (int i = 0; i + (1 << k) <= len; ++i) {
        int a = table_[k - 1][i];
        int b = table_[k - 1][i + (1 << (k - 1))];
        table_[k][i] = euler_depth_[a] <= euler_depth_[b] ? a : b;
      }
    }
  }

  const HcTree* tree_;
  std::vector<int> euler_;
  std::vector<int> euler_depth_;
  std::vector<int> leaf_first_;
  std::vector<std::vector<int>> table_;
};

namespace detail {

inline void require_tree_matches(int n, const HcTree& tree) {
  require(tree.covers(n), ErrorCode::kLeafMismatch,
          "tree with " + std::to_string(tree.leaf_count()) + " leaves does not cover vertices 0.." +
              std::to_string(n - 1));
}

}  // namespace detail

/// Dasgupta cost: sum over edges of w(u,v) * |T[u v v]|.
inline double dasgupta_cost(const WeightedGraph& g, const HcTree& tree) {
  detail::require_tree_matches(g.vertex_count(), tree);
  const LcaIndex index(tree);
  double cost = 0.0;
  for (const auto& e : g.edges()) cost += e.w * index.lca_size(e.u, e.v);
  return cost;
}

/// |cost_w(T) - cost_{w+delta}(T)|, with `delta` given per edge in edge order.
inline double cost_sensitivity_check(const WeightedGraph& g, std::span<const double> delta, const HcTree& tree) {
  require(delta.size() == g.edge_count(), ErrorCode::kInvalidArgument, "delta length mismatch");
  std::vector<double> shifted(g.edge_count());
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    shifted[i] = g.edges()[i].w + delta[i];
    require(shifted[i] >= 0.0, ErrorCode::kNegativeResultingWeight, "edge " + std::to_string(i));
  }
  const WeightedGraph neighbor = with_weights(g, shifted);
  return std::abs(dasgupta_cost(g, tree) - dasgupta_cost(neighbor, tree));
}

/// Nested-parenthesis text, e.g. "((0,1),(2,(3,4)))".
inline std::string serialize_tree(const HcTree& tree) {
  std::string out;
  auto emit = [&](auto&& self, int x) -> void {
    const auto& node = tree.node(x);
    if (node.left < 0) {
      out += std::to_string(node.label);
      return;
    }
    out += '(';
    self(self, node.left);
    out += ',';
    self(self, node.right);
    out += ')';
  };
  emit(emit, tree.root());
  return out;
}

inline HcTree parse_tree(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) throw ParseError(pos, std::string("expected '") + c + "'");
    ++pos;
  };
  std::vector<HcTree::Node> nodes;
  auto parse = [&](auto&& self, int nesting) -> int {
    if (nesting > 100000) throw ParseError(pos, "nesting too deep");
    skip_ws();
    if (pos >= text.size()) throw ParseError(pos, "unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      int left = self(self, nesting + 1);
      expect(',');
      int right = self(self, nesting + 1);
      expect(')');
      nodes.push_back({left, right, -1, 0});
      return static_cast<int>(nodes.size()) - 1;
    }
    const std::size_t start = pos;
    long long label = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      label = label * 10 + (text[pos] - '0');
      if (label > 1'000'000'000) throw ParseError(start, "leaf label too large");
      ++pos;
    }
    if (pos == start) throw ParseError(pos, "expected leaf label or '('");
    nodes.push_back({-1, -1, static_cast<Vertex>(label), 1});
    return static_cast<int>(nodes.size()) - 1;
  };
  int root = parse(parse, 0);
  skip_ws();
  if (pos != text.size()) throw ParseError(pos, "trailing characters");
  try {
    return HcTree(std::move(nodes), root);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace dphc

#endif  // DPHC_HCTREE_HPP_
