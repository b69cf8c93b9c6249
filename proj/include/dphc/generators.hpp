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

#ifndef DPHC_GENERATORS_HPP_
#define DPHC_GENERATORS_HPP_

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dphc/error.hpp"
#include "dphc/graph.hpp"
#include "dphc/graph_io.hpp"
#include "dphc/hctree.hpp"
#include "dphc/rng.hpp"

namespace dphc {

struct WeightRange {
  double low = 1.0;
  double high = 10.0;
  bool integer = false;  // uniform over the integers in [low, high]
};

namespace detail {

inline void check_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidProbability, std::string(name) + " must lie in [0, 1]");
}

inline void check_weights(const WeightRange& w) {
  require(w.low >= 0.0 && w.low <= w.high, ErrorCode::kInvalidArgument, "weight range must satisfy 0 <= low <= high");
  if (w.integer) {
    require(std::ceil(w.low) <= std::floor(w.high), ErrorCode::kInvalidArgument,
            "integer weight range contains no integer");
  }
}

inline double draw_weight(const WeightRange& w, SeededRng& rng) {
  if (w.integer) {
    const auto lo = static_cast<std::uint64_t>(std::ceil(w.low));
    const auto hi = static_cast<std::uint64_t>(std::floor(w.high));
    return static_cast<double>(lo + rng.below(hi - lo + 1));
  }
  return w.low == w.high ? w.low : rng.uniform(w.low, w.high);
}

inline std::vector<int> block_of(std::span<const int> sizes) {
  std::vector<int> block;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    require(sizes[b] >= 1, ErrorCode::kInvalidArgument, "block sizes must be positive");
    block.insert(block.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
  }
  require(!block.empty(), ErrorCode::kInvalidArgument, "need at least one block");
  return block;
}

/// Pairs (u, v), u < v, in lexicographic order; one Bernoulli draw per pair,
/// then one weight draw per present edge.
template <typename ProbFn>
WeightedGraph sample_blocks(const std::vector<int>& block, ProbFn&& prob, const WeightRange& weights, SeededRng& rng) {
  const int n = static_cast<int>(block.size());
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(prob(block[u], block[v]))) edges.push_back({u, v, draw_weight(weights, rng)});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

}  // namespace detail

/// Block label of every vertex when blocks occupy consecutive vertex ranges.
inline std::vector<int> block_labels(std::span<const int> sizes) { return detail::block_of(sizes); }

/// Stochastic block model over consecutive vertex blocks.
inline WeightedGraph gen_sbm(std::span<const int> sizes, double p, double q, const WeightRange& weights,
                             SeededRng& rng) {
  detail::check_probability(p, "p");
  detail::check_probability(q, "q");
  require(q <= p, ErrorCode::kInvalidProbability, "need q <= p");
  detail::check_weights(weights);
  const auto block = detail::block_of(sizes);
  return detail::sample_blocks(block, [&](int a, int b) { return a == b ? p : q; }, weights, rng);
}

/// Sibling group of each cluster in the two-level hierarchy: clusters 2i and
/// 2i+1 are siblings; with an odd count the last cluster joins the final pair.
inline std::vector<int> hsbm_groups(int clusters) {
  std::vector<int> group(static_cast<std::size_t>(clusters));
  const int pairs = std::max(1, clusters / 2);
  for (int c = 0; c < clusters; ++c) group[c] = std::min(c / 2, pairs - 1);
  return group;
}

/// Hierarchical SBM: p inside a cluster, q_sibling between clusters in the
/// same sibling group, q_far otherwise.
inline WeightedGraph gen_hsbm(std::span<const int> sizes, double p, double q_sibling, double q_far,
                              const WeightRange& weights, SeededRng& rng) {
  detail::check_probability(p, "p");
  detail::check_probability(q_sibling, "q_sibling");
  detail::check_probability(q_far, "q_far");
  require(q_far <= q_sibling && q_sibling <= p, ErrorCode::kInvalidProbability, "need q_far <= q_sibling <= p");
  detail::check_weights(weights);
  const auto block = detail::block_of(sizes);
  const auto group = hsbm_groups(static_cast<int>(sizes.size()));
  return detail::sample_blocks(
      block,
      [&](int a, int b) {
        if (a == b) return p;
        return group[a] == group[b] ? q_sibling : q_far;
      },
      weights, rng);
}

/// Near-equal block sizes summing to n (larger blocks first).
inline std::vector<int> even_blocks(int n, int k) {
  require(k >= 1 && n >= k, ErrorCode::kInvalidArgument, "need n >= k >= 1");
  std::vector<int> sizes(static_cast<std::size_t>(k), n / k);
  for (int i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

using FeatureMatrix = std::vector<std::vector<double>>;

/// Gaussian-kernel similarity graph: w = exp(-|x_u - x_v|^2 / (2 sigma^2)),
/// kept iff w >= tau and w > 0. With `rescale_to_unit` every kept weight is
/// divided by the smallest kept weight.
inline WeightedGraph kernel_graph(const FeatureMatrix& points, double sigma, double tau = 1e-3,
                                  bool rescale_to_unit = true) {
  require(sigma > 0.0, ErrorCode::kNonPositiveSigma, "sigma must be positive");
  require(tau >= 0.0, ErrorCode::kInvalidArgument, "tau must be nonnegative");
  const int n = static_cast<int>(points.size());
  for (const auto& row : points) {
    require(row.size() == points.front().size(), ErrorCode::kInvalidArgument, "feature rows differ in length");
  }
  std::vector<Edge> edges;
  double min_kept = std::numeric_limits<double>::infinity();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < points[u].size(); ++k) {
        const double d = points[u][k] - points[v][k];
        d2 += d * d;
      }
      const double w = std::exp(-d2 / (2.0 * sigma * sigma));
      if (w >= tau && w > 0.0) {
        edges.push_back({u, v, w});
        min_kept = std::min(min_kept, w);
      }
    }
  }
  if (rescale_to_unit && !edges.empty()) {
    for (auto& e : edges) e.w = e.w == min_kept ? 1.0 : e.w / min_kept;
  }
  return WeightedGraph(n, std::move(edges));
}

/// Bandwidth presets for the usual UCI tables.
inline double kernel_sigma_preset(std::string_view dataset) {
  if (dataset == "iris") return 5.0;
  if (dataset == "wine" || dataset == "boston") return 0.65;
  throw Error(ErrorCode::kInvalidArgument, "no sigma preset for '" + std::string(dataset) + "'");
}

/// Comma-separated numeric rows; blank lines ignored.
inline FeatureMatrix read_feature_csv(std::istream& in, bool skip_header = false) {
  FeatureMatrix rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header && line_no == 1) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      std::string_view cell = rest.substr(0, comma);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      double value = 0.0;
      if (!detail::parse_number(cell, value)) {
        throw ParseError(line_no, "bad number '" + std::string(cell) + "'");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(line_no, "expected " + std::to_string(rows.front().size()) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline FeatureMatrix read_feature_csv(const std::filesystem::path& path, bool skip_header = false) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + path.string());
  return read_feature_csv(in, skip_header);
}

namespace detail {

/// Uniform random partition into groups of five, each in uniformly random
/// cyclic order.
inline std::vector<std::array<Vertex, 5>> random_five_cycles(int n, SeededRng& rng) {
  require(n >= 5 && n % 5 == 0, ErrorCode::kNotDivisibleBy5, "n must be a positive multiple of 5, got " +
                                                                 std::to_string(n));
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(std::span<Vertex>(perm));
  std::vector<std::array<Vertex, 5>> cycles(static_cast<std::size_t>(n / 5));
  for (int c = 0; c < n / 5; ++c) {
    for (int j = 0; j < 5; ++j) cycles[c][j] = perm[5 * c + j];
  }
  return cycles;
}

inline std::vector<Edge> cycle_edges(const std::vector<std::array<Vertex, 5>>& cycles, double w) {
  std::vector<Edge> edges;
  for (const auto& c : cycles) {
    for (int j = 0; j < 5; ++j) edges.push_back({c[j], c[(j + 1) % 5], w});
  }
  return edges;
}

}  // namespace detail

/// n/5 vertex-disjoint 5-cycles with unit weights.
inline WeightedGraph gen_random_5cycles(int n, SeededRng& rng) {
  return WeightedGraph(n, detail::cycle_edges(detail::random_five_cycles(n, rng), 1.0));
}

struct HardInstance {
  WeightedGraph graph;
  std::vector<std::array<Vertex, 5>> cycles;  // each in cyclic order
  double heavy = 0.0;                         // 1 / (20 eps)
  double light = 0.0;                         // 1 / n^3
  std::vector<std::string> warnings;

  [[nodiscard]] int n() const { return graph.vertex_count(); }
};

/// Complete graph whose random disjoint 5-cycles carry weight 1/(20 eps) and
/// whose other edges carry 1/n^3.
inline HardInstance gen_hard_instance(int n, double epsilon, SeededRng& rng) {
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  auto cycles = detail::random_five_cycles(n, rng);
  const double heavy = 1.0 / (20.0 * epsilon);
  const double nd = n;
  const double light = 1.0 / (nd * nd * nd);
  std::vector<char> is_heavy(static_cast<std::size_t>(n) * n, 0);
  for (const auto& e : detail::cycle_edges(cycles, heavy)) is_heavy[e.u * n + e.v] = is_heavy[e.v * n + e.u] = 1;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, is_heavy[u * n + v] ? heavy : light});
  }
  HardInstance out{WeightedGraph(n, std::move(edges)), std::move(cycles), heavy, light, {}};
  if (epsilon >= 0.05) out.warnings.push_back("epsilon >= 1/20: cycle weight is at most 1");
  return out;
}

/// Witness tree: whole cycles are split into balanced groups, then each cycle
/// (v0 .. v4) becomes (v0, (v1, (v2, (v3, v4)))).
inline HcTree peel_tree(const HardInstance& hard) {
  require(!hard.cycles.empty(), ErrorCode::kInvalidArgument, "hard instance has no cycles");
  std::vector<char> seen(static_cast<std::size_t>(hard.n()), 0);
  for (const auto& c : hard.cycles) {
    for (Vertex v : c) {
      require(v >= 0 && v < hard.n() && !seen[v], ErrorCode::kInvalidArgument, "cycles must partition the vertices");
      seen[v] = 1;
    }
  }
  require(hard.cycles.size() * 5 == static_cast<std::size_t>(hard.n()), ErrorCode::kInvalidArgument,
          "cycles must partition the vertices");
  auto peel = [](const std::array<Vertex, 5>& c) {
    HcTree t = HcTree::join(HcTree::leaf(c[3]), HcTree::leaf(c[4]));
    for (int j = 2; j >= 0; --j) t = HcTree::join(HcTree::leaf(c[j]), t);
    return t;
  };
  auto group = [&](auto&& self, std::size_t lo, std::size_t hi) -> HcTree {
    if (hi - lo == 1) return peel(hard.cycles[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    return HcTree::join(self(self, lo, mid), self(self, mid, hi));
  };
  return group(group, 0, hard.cycles.size());
}

/// Upper bound on the peel tree's cost: (19 n / 5) W + 1/2.
inline double peel_cost_bound(const HardInstance& hard) { return 19.0 * hard.n() / 5.0 * hard.heavy + 0.5; }

/// Uniformly random leaf-labeled binary tree on n leaves: leaf k is inserted
/// above a uniformly chosen node of the tree on leaves 0..k-1.
inline HcTree random_tree(int n, SeededRng& rng) {
  require(n >= 1, ErrorCode::kEmptySet, "need at least one leaf");
  std::vector<HcTree::Node> nodes;
  nodes.reserve(2 * static_cast<std::size_t>(n) - 1);
  std::vector<int> parent;
  nodes.push_back({-1, -1, 0, 1});
  parent.push_back(-1);
  int root = 0;
  for (Vertex k = 1; k < n; ++k) {
    const int x = static_cast<int>(rng.below(nodes.size()));
    const int leaf = static_cast<int>(nodes.size());
    nodes.push_back({-1, -1, k, 1});
    parent.push_back(-1);
    const int p = static_cast<int>(nodes.size());
    nodes.push_back({x, leaf, -1, 0});
    parent.push_back(parent[x]);
    if (parent[x] < 0) {
      root = p;
    } else {
      auto& up = nodes[parent[x]];
      (up.left == x ? up.left : up.right) = p;
    }
    parent[x] = p;
    parent[leaf] = p;
  }
  return HcTree(std::move(nodes), root);
}

}  // namespace dphc

#endif  // DPHC_GENERATORS_HPP_
