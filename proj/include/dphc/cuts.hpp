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

#ifndef DPHC_CUTS_HPP_
#define DPHC_CUTS_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "dphc/error.hpp"
#include "dphc/graph.hpp"
#include "dphc/rng.hpp"

namespace dphc {

inline constexpr double kDefaultBalance = 1.0 / 3.0;

/// A two-way cut reported by its smaller side (equal sizes: the
/// lexicographically smaller side).
struct CutResult {
  VertexSet side;
  double cut_w = 0.0;
  double expansion = 0.0;  // cut_w / min(|S|, n - |S|)
  double balance = 0.0;    // min(|S|, n - |S|) / n
};

/// Smallest admissible side size: max(1, ceil(gamma * n)), capped at floor(n/2).
inline int balance_floor(int n, double gamma) {
  const int raw = static_cast<int>(std::ceil(gamma * n - 1e-9));
  return std::clamp(raw, 1, std::max(1, n / 2));
}

/// Edge expansion w(S, V\S) / min(|S|, |V\S|).
inline double sparsity(const WeightedGraph& g, const VertexSet& s) {
  const double w = cut_weight(g, s);
  const auto smaller = std::min(s.size(), static_cast<std::size_t>(g.vertex_count()) - s.size());
  return w / static_cast<double>(smaller);
}

/// Builds the canonical CutResult for the bipartition {s, V\s}.
inline CutResult make_cut_result(const WeightedGraph& g, const VertexSet& s) {
  const int n = g.vertex_count();
  VertexSet side = s;
  VertexSet other = s.complement(n);
  if (other.size() < side.size() || (other.size() == side.size() && other < side)) std::swap(side, other);
  CutResult r;
  r.cut_w = cut_weight(g, side);
  r.expansion = r.cut_w / static_cast<double>(side.size());
  r.balance = static_cast<double>(side.size()) / n;
  r.side = std::move(side);
  return r;
}

namespace detail {

inline bool nearly_equal(double a, double b, double rel = 1e-10) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Lexicographic order of the sorted label lists encoded by two masks.
inline bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const std::uint32_t diff = a ^ b;
  const int d = std::countr_zero(diff);
  const std::uint32_t above = d >= 31 ? 0u : (~std::uint32_t{0} << (d + 1));
  if (a & (1u << d)) return (b & above) != 0;  // b continues with something larger, or b is a prefix of a
  return (a & above) == 0;
}

inline VertexSet mask_to_set(std::uint32_t mask) {
  std::vector<Vertex> labels;
  while (mask) {
    labels.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return VertexSet(std::move(labels));
}

enum class CutObjective { kExpansion, kCutWeight };

inline CutResult exhaustive_balanced_cut(const WeightedGraph& g, double gamma, CutObjective objective) {
  const int n = g.vertex_count();
  require(n >= 2, ErrorCode::kSingletonGraph, "need at least two vertices");
  require(n <= 24, ErrorCode::kTooLargeForOracle, "exhaustive cut oracle supports n <= 24, got " + std::to_string(n));
  const int lo = balance_floor(n, gamma);
  const int hi = n / 2;
  std::vector<long double> w(static_cast<std::size_t>(n) * n, 0.0L);
  std::vector<long double> deg(static_cast<std::size_t>(n), 0.0L);
  for (const auto& e : g.edges()) {
    w[e.u * n + e.v] = w[e.v * n + e.u] = e.w;
    deg[e.u] += e.w;
    deg[e.v] += e.w;
  }
  // Gray-code walk over all subsets, tracking w(S, V\S) and w(v, S).
  std::vector<long double> to_s(static_cast<std::size_t>(n), 0.0L);
  long double cut = 0.0L;
  std::uint32_t mask = 0;
  std::uint32_t best_mask = 0;
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const std::uint32_t bit = 1u << v;
    if (mask & bit) {
      cut += 2.0L * to_s[v] - deg[v];
      mask &= ~bit;
      for (int u = 0; u < n; ++u) to_s[u] -= w[u * n + v];
    } else {
      cut += deg[v] - 2.0L * to_s[v];
      mask |= bit;
      for (int u = 0; u < n; ++u) to_s[u] += w[u * n + v];
    }
    const int size = std::popcount(mask);
    if (size < lo || size > hi) continue;
    const double value = objective == CutObjective::kExpansion ? static_cast<double>(cut / size)
                                                               : static_cast<double>(cut);
    bool take;
    if (best_mask == 0) {
      take = true;
    } else if (nearly_equal(value, best)) {
      take = mask_lex_less(mask, best_mask);
    } else {
      take = value < best;
    }
    if (take) {
      best = (best_mask == 0 || !nearly_equal(value, best)) ? value : std::min(best, value);
      best_mask = mask;
    }
  }
  return make_cut_result(g, mask_to_set(best_mask));
}

}  // namespace detail

/// Exact gamma-balanced sparsest cut by enumerating every side with
/// ceil(gamma n) <= |S| <= floor(n/2). Ties go to the lexicographically
/// smallest side. n <= 24.
inline CutResult brute_force_balanced_sparsest_cut(const WeightedGraph& g, double gamma = kDefaultBalance) {
  return detail::exhaustive_balanced_cut(g, gamma, detail::CutObjective::kExpansion);
}

/// Exact gamma-balanced minimum cut (minimizes w(S, V\S)). n <= 24.
inline CutResult brute_force_balanced_min_cut(const WeightedGraph& g, double gamma = kDefaultBalance) {
  return detail::exhaustive_balanced_cut(g, gamma, detail::CutObjective::kCutWeight);
}

struct SpectralOptions {
  int max_iterations = 500;  // power iteration, above dense_limit only
  double tolerance = 1e-8;
  int embedding_dim = 4;     // low Laplacian eigenvectors swept per cut
  int dense_limit = 2000;    // largest n solved with a dense eigensolver
};

/// Approximate Fiedler vector of the weighted Laplacian by power iteration on
/// (c I - L) with the constant vector projected out. Starts from the degree
/// vector plus a seeded random component (random alone when degrees are
/// constant).
inline std::vector<double> fiedler_vector(const WeightedGraph& g, SeededRng& rng, const SpectralOptions& opts = {}) {
  const int n = g.vertex_count();
  std::vector<double> deg(static_cast<std::size_t>(n));
  double max_deg = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  auto deflate_normalize = [n](std::vector<double>& x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double norm = 0.0;
    for (double& xi : x) {
      xi -= mean;
      norm += xi * xi;
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (double& xi : x) xi /= norm;
    }
    return norm;
  };
  std::vector<double> x = deg;
  const double scale = std::max(max_deg, 1.0) * std::sqrt(static_cast<double>(n));
  const bool flat = deflate_normalize(x) <= 1e-9 * scale;
  // A small seeded component keeps the start from being orthogonal to the
  // Fiedler vector on symmetric graphs.
  std::vector<double> jitter(static_cast<std::size_t>(n));
  for (double& r : jitter) r = rng.uniform(-1.0, 1.0);
  deflate_normalize(jitter);
  const double mix = flat ? 1.0 : 0.1;
  for (Vertex v = 0; v < n; ++v) x[v] = (flat ? 0.0 : x[v]) + mix * jitter[v];
  deflate_normalize(x);
  if (max_deg <= 0.0) return x;
  const double shift = 2.0 * max_deg;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int it = 0; it < opts.max_iterations; ++it) {
    for (Vertex v = 0; v < n; ++v) {
      double lx = deg[v] * x[v];
      for (const auto& nb : g.neighbors(v)) lx -= nb.weight * x[nb.vertex];
      y[v] = shift * x[v] - lx;
    }
    if (deflate_normalize(y) == 0.0) break;
    double delta = 0.0;
    for (Vertex v = 0; v < n; ++v) delta = std::max(delta, std::abs(y[v] - x[v]));
    x.swap(y);
    if (delta < opts.tolerance) break;
  }
  return x;
}

namespace detail {

/// Best balanced prefix of `order` by expansion. Returns the prefix length
/// (0 when no prefix meets the floor).
inline std::size_t best_prefix(const WeightedGraph& g, const std::vector<Vertex>& order, int floor_size,
                               double* best_expansion) {
  const int n = g.vertex_count();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  double cut = 0.0;
  std::size_t best_len = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const Vertex v = order[k];
    double deg = 0.0;
    double to_s = 0.0;
    for (const auto& nb : g.neighbors(v)) {
      deg += nb.weight;
      if (in[nb.vertex]) to_s += nb.weight;
    }
    cut += deg - 2.0 * to_s;
    in[v] = 1;
    const int len = static_cast<int>(k) + 1;
    const int smaller = std::min(len, n - len);
    if (smaller < floor_size) continue;
    const double expansion = std::max(cut, 0.0) / smaller;
    if (expansion < best) {
      best = expansion;
      best_len = static_cast<std::size_t>(len);
    }
  }
  *best_expansion = best;
  return best_len;
}

/// Greedy single-vertex moves that lower expansion while keeping the floor.
inline VertexSet refine_cut(const WeightedGraph& g, const VertexSet& start, int floor_size) {
  const int n = g.vertex_count();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : start) in[v] = 1;
  std::vector<double> to_s(static_cast<std::size_t>(n), 0.0);
  std::vector<double> deg(static_cast<std::size_t>(n), 0.0);
  double cut = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      deg[v] += nb.weight;
      if (in[nb.vertex]) to_s[v] += nb.weight;
    }
  }
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) cut += e.w;
  }
  int size = static_cast<int>(start.size());
  auto expansion_of = [n](double c, int s) { return std::max(c, 0.0) / std::min(s, n - s); };
  double current = expansion_of(cut, size);
  for (int step = 0; step < 2 * n; ++step) {
    Vertex best_v = -1;
    double best_value = current;
    double best_cut = cut;
    for (Vertex v = 0; v < n; ++v) {
      const int new_size = in[v] ? size - 1 : size + 1;
      if (std::min(new_size, n - new_size) < floor_size) continue;
      const double new_cut = in[v] ? cut + 2.0 * to_s[v] - deg[v] : cut + deg[v] - 2.0 * to_s[v];
      const double value = expansion_of(new_cut, new_size);
      if (value < best_value - 1e-12 * std::max(1.0, std::abs(best_value))) {
        best_value = value;
        best_v = v;
        best_cut = new_cut;
      }
    }
    if (best_v < 0) break;
    const double sign = in[best_v] ? -1.0 : 1.0;
    size += in[best_v] ? -1 : 1;
    in[best_v] = !in[best_v];
    for (const auto& nb : g.neighbors(best_v)) to_s[nb.vertex] += sign * nb.weight;
    cut = best_cut;
    current = best_value;
  }
  std::vector<Vertex> labels;
  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) labels.push_back(v);
  }
  return VertexSet(std::move(labels));
}

/// Eigenvectors of the weighted Laplacian for its 2nd..(k+1)th smallest
/// eigenvalues, from a dense solve when n <= dense_limit. Larger graphs get
/// the power-iteration Fiedler vector alone.
inline std::vector<std::vector<double>> spectral_embedding(const WeightedGraph& g, SeededRng& rng,
                                                           const SpectralOptions& opts) {
  const int n = g.vertex_count();
  if (n > opts.dense_limit) return {fiedler_vector(g, rng, opts)};
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    lap(e.u, e.v) -= e.w;
    lap(e.v, e.u) -= e.w;
    lap(e.u, e.u) += e.w;
    lap(e.v, e.v) += e.w;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const int k = std::min(opts.embedding_dim, n - 1);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(std::max(k, 0)));
  for (int j = 0; j < k; ++j) {
    const auto col = solver.eigenvectors().col(j + 1);
    out[j].assign(col.data(), col.data() + n);
  }
  return out;
}

inline std::vector<Vertex> order_by(const std::vector<double>& x) {
  std::vector<Vertex> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return x[a] < x[b]; });
  return order;
}

/// Sweep orders: one per embedding vector plus `directions` random linear
/// combinations of them.
inline std::vector<std::vector<Vertex>> spectral_orders(const WeightedGraph& g, int directions, SeededRng& rng,
                                                        const SpectralOptions& opts) {
  const auto basis = spectral_embedding(g, rng, opts);
  std::vector<std::vector<Vertex>> orders;
  for (const auto& x : basis) orders.push_back(order_by(x));
  if (basis.size() < 2) return orders;
  std::vector<double> mix(static_cast<std::size_t>(g.vertex_count()));
  for (int r = 0; r < directions; ++r) {
    std::fill(mix.begin(), mix.end(), 0.0);
    for (const auto& x : basis) {
      const double c = rng.uniform(-1.0, 1.0);
      for (std::size_t v = 0; v < mix.size(); ++v) mix[v] += c * x[v];
    }
    orders.push_back(order_by(mix));
  }
  return orders;
}

}  // namespace detail

/// Heuristic gamma-balanced sparsest cut. Candidates: a zero-weight grouping
/// of connected components when it meets the balance floor, otherwise sweep
/// cuts along low Laplacian eigenvectors and `restarts` random directions in
/// their span. The best candidate is polished by greedy single-vertex moves.
/// The result never loses to any candidate examined and always meets the
/// floor.
inline CutResult balanced_sparsest_cut(const WeightedGraph& g, double gamma, int restarts, SeededRng& rng,
                                       const SpectralOptions& opts = {}) {
  const int n = g.vertex_count();
  require(n >= 2, ErrorCode::kSingletonGraph, "need at least two vertices");
  if (n == 2) return make_cut_result(g, VertexSet{0});
  const int floor_size = balance_floor(n, gamma);

  VertexSet best_side;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const VertexSet& side) {
    const auto candidate = make_cut_result(g, side);
    if (candidate.expansion < best ||
        (detail::nearly_equal(candidate.expansion, best) && candidate.side < best_side)) {
      best = candidate.expansion;
      best_side = candidate.side;
    }
  };
  auto consider_order = [&](const std::vector<Vertex>& order) {
    double value = 0.0;
    const std::size_t len = detail::best_prefix(g, order, floor_size, &value);
    if (len > 0) consider(VertexSet(std::vector<Vertex>(order.begin(), order.begin() + len)));
  };

  auto components = connected_components(g, /*positive_only=*/true);
  if (components.size() > 1) {
    std::stable_sort(components.begin(), components.end(),
                     [](const VertexSet& a, const VertexSet& b) { return a.size() > b.size(); });
    std::vector<Vertex> bins[2];
    for (const auto& c : components) {
      auto& target = bins[0].size() <= bins[1].size() ? bins[0] : bins[1];
      target.insert(target.end(), c.begin(), c.end());
    }
    const int smaller = static_cast<int>(std::min(bins[0].size(), bins[1].size()));
    if (smaller >= floor_size) {
      consider(VertexSet(bins[0]));
    } else {
      // One component dominates: sweep its spectral orders with the rest
      // attached at one end.
      const VertexSet& giant = components.front();
      auto sub = induced_subgraph(g, giant);
      std::vector<Vertex> order;
      std::vector<char> in_giant(static_cast<std::size_t>(n), 0);
      for (Vertex v : giant) in_giant[v] = 1;
      for (Vertex v = 0; v < n; ++v) {
        if (!in_giant[v]) order.push_back(v);
      }
      if (sub.graph.vertex_count() >= 2) {
        for (const auto& local : detail::spectral_orders(sub.graph, restarts, rng, opts)) {
          std::vector<Vertex> full = order;
          for (Vertex v : local) full.push_back(sub.original[v]);
          consider_order(full);
          std::reverse(full.begin(), full.end());
          consider_order(full);
        }
      } else {
        order.push_back(giant[0]);
        consider_order(order);
      }
    }
  } else {
    for (const auto& order : detail::spectral_orders(g, restarts, rng, opts)) consider_order(order);
  }

  if (best > 0.0) consider(detail::refine_cut(g, best_side, floor_size));
  return make_cut_result(g, best_side);
}

inline CutResult balanced_sparsest_cut(const WeightedGraph& g, SeededRng& rng) {
  return balanced_sparsest_cut(g, kDefaultBalance, 16, rng);
}

}  // namespace dphc

#endif  // DPHC_CUTS_HPP_
