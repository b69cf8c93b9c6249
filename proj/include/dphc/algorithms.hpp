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

#ifndef DPHC_ALGORITHMS_HPP_
#define DPHC_ALGORITHMS_HPP_

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dphc/cuts.hpp"
#include "dphc/error.hpp"
#include "dphc/graph.hpp"
#include "dphc/hctree.hpp"
#include "dphc/mechanisms.hpp"
#include "dphc/rng.hpp"
#include "dphc/tree_search.hpp"

namespace dphc {

struct HcConfig {
  double epsilon = 1.0;
  double overlay_c = 10.0;  // overlay = overlay_c * ln(n) / epsilon
  double gamma = kDefaultBalance;
  int restarts = 16;  // random spectral directions per cut
  std::uint64_t seed = 0;
  bool noise_disabled = false;  // contract tests only; no privacy

  [[nodiscard]] SeededRng make_rng() const {
    SeededRng rng(seed);
    rng.set_noise_enabled(!noise_disabled);
    return rng;
  }
};

/// A finished run: the released tree, its privacy charges, and any
/// non-fatal diagnostics.
struct HcRun {
  HcTree tree;
  EpsilonLedger ledger;
  std::vector<std::string> warnings;
};

namespace detail {

inline void validate_config(const HcConfig& cfg) {
  require(cfg.epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  require(cfg.gamma > 0.0 && cfg.gamma <= 0.5, ErrorCode::kInvalidArgument, "balance fraction must lie in (0, 1/2]");
  require(cfg.restarts >= 0, ErrorCode::kInvalidArgument, "restarts must be nonnegative");
}

inline HcTree recursive_sparsest_cut(const WeightedGraph& g, const HcConfig& cfg, SeededRng& rng) {
  return make_tree(g, [&](const WeightedGraph& h) { return balanced_sparsest_cut(h, cfg.gamma, cfg.restarts, rng); });
}

}  // namespace detail

/// Private hierarchical clustering: perturb every edge once with overlay plus
/// Lap(1/eps), then recursive balanced sparsest cut on the perturbed graph.
/// Only the perturbed graph is read after the single noise pass.
template <EdgeSource G>
HcTree hc_dp(const G& g, const HcConfig& cfg, SeededRng& rng, EpsilonLedger& ledger,
             std::vector<std::string>* warnings = nullptr) {
  detail::validate_config(cfg);
  const WeightedGraph noisy = perturb_graph(g, cfg.epsilon, cfg.overlay_c, rng, ledger);
  if (warnings != nullptr && !is_connected(noisy)) warnings->push_back("input graph is not connected");
  return detail::recursive_sparsest_cut(noisy, cfg, rng);
}

template <EdgeSource G>
HcRun hc_dp(const G& g, const HcConfig& cfg) {
  HcRun run{HcTree::leaf(0), EpsilonLedger(cfg.epsilon), {}};
  SeededRng rng = cfg.make_rng();
  run.tree = hc_dp(g, cfg, rng, run.ledger, &run.warnings);
  return run;
}

/// Baseline: Lap(1/eps) per edge (no overlay, clamped at zero), then the same
/// recursive balanced sparsest cut.
template <EdgeSource G>
HcTree input_perturbation_hc(const G& g, const HcConfig& cfg, SeededRng& rng, EpsilonLedger& ledger) {
  detail::validate_config(cfg);
  const WeightedGraph noisy = perturb_graph_plain(g, cfg.epsilon, rng, ledger);
  return detail::recursive_sparsest_cut(noisy, cfg, rng);
}

template <EdgeSource G>
HcRun input_perturbation_hc(const G& g, const HcConfig& cfg) {
  HcRun run{HcTree::leaf(0), EpsilonLedger(cfg.epsilon), {}};
  SeededRng rng = cfg.make_rng();
  run.tree = input_perturbation_hc(g, cfg, rng, run.ledger);
  return run;
}

/// Recursive balanced sparsest cut on the true weights. No privacy.
inline HcTree nonprivate_hc(const WeightedGraph& g, const HcConfig& cfg, SeededRng& rng) {
  require(cfg.gamma > 0.0 && cfg.gamma <= 0.5, ErrorCode::kInvalidArgument, "balance fraction must lie in (0, 1/2]");
  return detail::recursive_sparsest_cut(g, cfg, rng);
}

inline HcRun nonprivate_hc(const WeightedGraph& g, const HcConfig& cfg) {
  HcRun run{HcTree::leaf(0), EpsilonLedger(cfg.epsilon), {}};
  SeededRng rng = cfg.make_rng();
  run.tree = nonprivate_hc(g, cfg, rng);
  return run;
}

enum class LinkageMethod { kSingle, kAverage, kComplete };

inline LinkageMethod parse_linkage_method(std::string_view name) {
  if (name == "single") return LinkageMethod::kSingle;
  if (name == "average") return LinkageMethod::kAverage;
  if (name == "complete") return LinkageMethod::kComplete;
  throw Error(ErrorCode::kUnknownMethod, std::string(name));
}

inline std::string_view to_string(LinkageMethod method) {
  switch (method) {
    case LinkageMethod::kSingle: return "single";
    case LinkageMethod::kAverage: return "average";
    case LinkageMethod::kComplete: return "complete";
  }
  return "unknown";
}

/// Agglomerative clustering on similarities (edge weights; absent pairs are 0).
/// Repeatedly merges the most similar pair of clusters; ties go to the pair
/// with the smallest (min-label, min-label). The surviving cluster keeps the
/// smaller label and becomes the left child.
inline HcTree agglomerate(const WeightedGraph& g, LinkageMethod method) {
  const int n = g.vertex_count();
  require(n >= 1, ErrorCode::kEmptySet, "empty graph");
  std::vector<double> sim(static_cast<std::size_t>(n) * n, 0.0);
  for (const auto& e : g.edges()) sim[e.u * n + e.v] = sim[e.v * n + e.u] = e.w;
  std::vector<HcTree> trees;
  trees.reserve(n);
  for (Vertex v = 0; v < n; ++v) trees.push_back(HcTree::leaf(v));
  std::vector<int> size(static_cast<std::size_t>(n), 1);
  std::vector<int> active(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) active[v] = v;

  while (active.size() > 1) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 1;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double* row = &sim[static_cast<std::size_t>(active[i]) * n];
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        if (row[active[j]] > best) {
          best = row[active[j]];
          bi = i;
          bj = j;
        }
      }
    }
    const int a = active[bi];
    const int b = active[bj];
    for (int c : active) {
      if (c == a || c == b) continue;
      double& ac = sim[static_cast<std::size_t>(a) * n + c];
      const double bc = sim[static_cast<std::size_t>(b) * n + c];
      switch (method) {
        case LinkageMethod::kSingle: ac = std::max(ac, bc); break;
        case LinkageMethod::kComplete: ac = std::min(ac, bc); break;
        case LinkageMethod::kAverage: ac = (size[a] * ac + size[b] * bc) / (size[a] + size[b]); break;
      }
      sim[static_cast<std::size_t>(c) * n + a] = ac;
    }
    trees[a] = HcTree::join(trees[a], trees[b]);
    size[a] += size[b];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return trees[active.front()];
}

/// Linkage baseline under the same overlay perturbation as hc_dp.
template <EdgeSource G>
HcTree linkage_hc(const G& g, const HcConfig& cfg, LinkageMethod method, SeededRng& rng, EpsilonLedger& ledger) {
  detail::validate_config(cfg);
  const WeightedGraph noisy = perturb_graph(g, cfg.epsilon, cfg.overlay_c, rng, ledger);
  require(noisy.edge_count() > 0, ErrorCode::kInvalidArgument, "linkage needs at least one edge");
  return agglomerate(noisy, method);
}

template <EdgeSource G>
HcRun linkage_hc(const G& g, const HcConfig& cfg, LinkageMethod method) {
  HcRun run{HcTree::leaf(0), EpsilonLedger(cfg.epsilon), {}};
  SeededRng rng = cfg.make_rng();
  run.tree = linkage_hc(g, cfg, method, rng, run.ledger);
  return run;
}

/// Exponential mechanism over all trees: Pr[T] proportional to
/// exp(-eps * cost(T) / (2n)), using sensitivity n of the cost. Sampled
/// exactly in one pass with the Gumbel-max trick. n <= 10.
inline HcTree exponential_mechanism_hc(const WeightedGraph& g, double epsilon, SeededRng& rng,
                                       EpsilonLedger& ledger) {
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  const int n = g.vertex_count();
  TreeEnumerator walker(n);
  const double factor = epsilon / (2.0 * n);
  double best = -std::numeric_limits<double>::infinity();
  HcTree chosen = HcTree::leaf(0);
  walker.run([&](const TreeEnumerator& state) {
    double score = -factor * state.cost(g);
    if (rng.noise_enabled()) score -= std::log(-std::log(rng.uniform_open()));
    if (score > best) {
      best = score;
      chosen = state.materialize();
    }
  });
  ledger.charge("exponential_mechanism", epsilon);
  return chosen;
}

inline HcRun exponential_mechanism_hc(const WeightedGraph& g, const HcConfig& cfg) {
  HcRun run{HcTree::leaf(0), EpsilonLedger(cfg.epsilon), {}};
  SeededRng rng = cfg.make_rng();
  run.tree = exponential_mechanism_hc(g, cfg.epsilon, rng, run.ledger);
  return run;
}

/// Runs hc_dp and the exponential mechanism at eps/4 each, releases both
/// costs at eps/4 each, and keeps the tree with the smaller released cost.
inline HcTree blended_hc(const WeightedGraph& g, const HcConfig& cfg, SeededRng& rng, EpsilonLedger& ledger) {
  detail::validate_config(cfg);
  require(g.vertex_count() <= kMaxEnumerationLeaves, ErrorCode::kTooLargeForEnumeration,
          "blended algorithm needs n <= " + std::to_string(kMaxEnumerationLeaves));
  const double quarter = cfg.epsilon / 4.0;
  HcConfig part = cfg;
  part.epsilon = quarter;
  std::array<HcTree, 2> candidates{hc_dp(g, part, rng, ledger), exponential_mechanism_hc(g, quarter, rng, ledger)};
  return private_select_best(g, candidates, 2.0 * quarter, rng, ledger);
}

inline HcRun blended_hc(const WeightedGraph& g, const HcConfig& cfg) {
  HcRun run{HcTree::leaf(0), EpsilonLedger(cfg.epsilon), {}};
  SeededRng rng = cfg.make_rng();
  run.tree = blended_hc(g, cfg, rng, run.ledger);
  return run;
}

}  // namespace dphc

#endif  // DPHC_ALGORITHMS_HPP_
