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

#ifndef DPHC_REDUCTION_HPP_
#define DPHC_REDUCTION_HPP_

#include <cmath>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "dphc/cuts.hpp"
#include "dphc/error.hpp"
#include "dphc/graph.hpp"
#include "dphc/hctree.hpp"
#include "dphc/mechanisms.hpp"
#include "dphc/rng.hpp"

namespace dphc {

/// Per-subgraph budget eps_H = c_level * eps * |H| / (n log2 n).
/// Summed over a level whose parts partition V this is c_level * eps / log2 n,
/// and over at most 2 log2 n levels it is at most 2 c_level * eps.
class EpsilonSchedule {
 public:
  EpsilonSchedule(double epsilon, int n, double c_level = 0.5) : epsilon_(epsilon), n_(n), c_level_(c_level) {
    require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
    require(n >= 2, ErrorCode::kSingletonGraph, "schedule needs n >= 2");
    require(c_level > 0.0, ErrorCode::kInvalidArgument, "c_level must be positive");
  }

  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] double c_level() const noexcept { return c_level_; }
  [[nodiscard]] double log_n() const { return std::log2(static_cast<double>(n_)); }

  [[nodiscard]] double for_subgraph(int size) const { return c_level_ * epsilon_ * size / (n_ * log_n()); }
  [[nodiscard]] double per_level() const { return c_level_ * epsilon_ / log_n(); }
  [[nodiscard]] int max_levels() const { return static_cast<int>(std::floor(2.0 * log_n())); }

 private:
  double epsilon_;
  int n_;
  double c_level_;
};

template <typename F>
concept PrivateCutSubroutine = std::invocable<F&, const WeightedGraph&, double, SeededRng&> &&
                               std::convertible_to<std::invoke_result_t<F&, const WeightedGraph&, double, SeededRng&>,
                                                   CutResult>;

struct ReductionOptions {
  double c_level = 0.5;
  double gamma = kDefaultBalance;
};

/// One recorded split of subgraph H (original labels) into (first, second).
struct RecordedSplit {
  int level = 0;
  VertexSet part;
  VertexSet first;
  VertexSet second;
  double cut_w = 0.0;  // w(first, second) on the input weights; analysis only
  double epsilon = 0.0;
};

struct ReductionResult {
  HcTree tree;
  EpsilonLedger ledger;
  std::vector<RecordedSplit> splits;
  int levels = 0;
};

/// Level-synchronous recursive partitioning in which every non-singleton
/// subgraph H at level l is cut by `cut_fn(H, eps_H, rng_H)`. Each call gets
/// its own child stream derived from (level, index within level).
template <PrivateCutSubroutine CutFn>
ReductionResult adaptive_reduction_hc(const WeightedGraph& g, double epsilon, CutFn&& cut_fn, const SeededRng& rng,
                                      const ReductionOptions& opts = {}) {
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  const int n = g.vertex_count();
  require(n >= 1, ErrorCode::kEmptySet, "empty graph");
  ReductionResult result{HcTree::leaf(0), EpsilonLedger(epsilon), {}, 0};
  if (n == 1) return result;
  const EpsilonSchedule schedule(epsilon, n, opts.c_level);

  struct Part {
    VertexSet vertices;
    int first = -1;  // indices into `parts` once split
    int second = -1;
  };
  std::vector<Part> parts;
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  parts.push_back({VertexSet(std::move(all))});

  std::vector<int> frontier{0};
  for (int level = 0; !frontier.empty(); ++level) {
    std::vector<int> next;
    std::uint64_t index = 0;
    for (int id : frontier) {
      const VertexSet host = parts[id].vertices;
      const int size = static_cast<int>(host.size());
      if (size == 1) continue;
      const auto sub = induced_subgraph(g, host);
      const double eps_h = schedule.for_subgraph(size);
      SeededRng local = SeededRng(derive_seed(rng.seed(), {static_cast<std::uint64_t>(level), index++}));
      local.set_noise_enabled(rng.noise_enabled());
      const CutResult cut = cut_fn(sub.graph, eps_h, local);
      const std::size_t smaller = std::min(cut.side.size(), host.size() - cut.side.size());
      require(!cut.side.empty() && cut.side.size() < host.size() &&
                  static_cast<int>(smaller) >= balance_floor(size, opts.gamma),
              ErrorCode::kNonBalancedCutFromSubroutine,
              "subroutine returned a cut with smaller side " + std::to_string(smaller) + " on " +
                  std::to_string(size) + " vertices");
      result.ledger.charge("reduction_cut", eps_h, level, size);

      const VertexSet other_local = cut.side.complement(size);
      std::vector<Vertex> a;
      std::vector<Vertex> b;
      for (Vertex v : cut.side) a.push_back(sub.original[v]);
      for (Vertex v : other_local) b.push_back(sub.original[v]);
      VertexSet first(std::move(a));
      VertexSet second(std::move(b));
      result.splits.push_back({level, host, first, second, cut_weight(sub.graph, cut.side), eps_h});

      parts[id].first = static_cast<int>(parts.size());
      parts.push_back({std::move(first)});
      parts[id].second = static_cast<int>(parts.size());
      parts.push_back({std::move(second)});
      next.push_back(parts[id].first);
      next.push_back(parts[id].second);
    }
    if (!next.empty()) result.levels = level + 1;
    frontier = std::move(next);
  }

  auto build = [&](auto&& self, int id) -> HcTree {
    const Part& p = parts[id];
    if (p.first < 0) return HcTree::leaf(p.vertices[0]);
    return HcTree::join(self(self, p.first), self(self, p.second));
  };
  result.tree = build(build, 0);
  return result;
}

/// The runnable private subroutine: perturb H with budget eps_H (overlay
/// included), then a heuristic balanced sparsest cut of the noisy graph.
inline CutResult dp_cut_subroutine(const WeightedGraph& h, double epsilon_h, SeededRng& rng,
                                   double gamma = kDefaultBalance, int restarts = 16, double overlay_c = 10.0) {
  EpsilonLedger local;
  const WeightedGraph noisy = perturb_graph(h, epsilon_h, overlay_c, rng, local);
  const CutResult cut = balanced_sparsest_cut(noisy, gamma, restarts, rng);
  return make_cut_result(h, cut.side);
}

/// Checks w(S, V\S) <= 2 w(S*, V\S*) + C n / (2 eps log2^2 n), where S* is the
/// exact 1/3-balanced minimum cut. n <= 20.
inline bool balanced_sparsest_to_min_cut_check(const WeightedGraph& g, const CutResult& cut, double c, double epsilon) {
  const int n = g.vertex_count();
  require(n <= 20, ErrorCode::kTooLargeForOracle, "min-cut oracle supports n <= 20, got " + std::to_string(n));
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  const CutResult best = brute_force_balanced_min_cut(g, kDefaultBalance);
  const double log_n = std::log2(static_cast<double>(n));
  const double slack = c * n / (2.0 * epsilon * log_n * log_n);
  return cut_weight(g, cut.side) <= 2.0 * best.cut_w + slack;
}

}  // namespace dphc

#endif  // DPHC_REDUCTION_HPP_
