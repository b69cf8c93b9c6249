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

#ifndef DPHC_VERIFY_HPP_
#define DPHC_VERIFY_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dphc/error.hpp"
#include "dphc/generators.hpp"
#include "dphc/graph.hpp"
#include "dphc/hctree.hpp"
#include "dphc/mechanisms.hpp"
#include "dphc/reduction.hpp"
#include "dphc/rng.hpp"
#include "dphc/tree_search.hpp"

namespace dphc {

struct VerifyLine {
  std::string check;
  bool pass = false;
  std::string detail;
};

inline void print_verify_lines(std::ostream& out, const std::vector<VerifyLine>& lines) {
  for (const auto& l : lines) out << (l.pass ? "PASS " : "FAIL ") << l.check << ": " << l.detail << '\n';
}

inline bool all_passed(const std::vector<VerifyLine>& lines) {
  for (const auto& l : lines) {
    if (!l.pass) return false;
  }
  return true;
}

/// Parameters shared by the suites; unset fields take per-suite defaults.
struct VerifyParams {
  std::optional<int> n;
  std::optional<double> epsilon;
  std::optional<int> trials;
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

/// G(n, p) with weights uniform on [lo, hi]; at least one edge.
inline WeightedGraph random_graph(int n, double p, double lo, double hi, SeededRng& rng) {
  const int sizes[] = {n};
  while (true) {
    auto g = gen_sbm(sizes, p, p, WeightRange{lo, hi, false}, rng);
    if (g.edge_count() > 0 || n < 2) return g;
  }
}

inline WeightedGraph complete_graph(int n, double w) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  }
  return WeightedGraph(n, std::move(edges));
}

}  // namespace detail

/// Fraction of overlay perturbations of unit K_n with any negative
/// pre-clamp weight; passes at <= 0.005.
inline std::vector<VerifyLine> verify_positive(const VerifyParams& params) {
  const int n = params.n.value_or(50);
  const double eps = params.epsilon.value_or(0.5);
  const int trials = params.trials.value_or(1000);
  const WeightedGraph g = detail::complete_graph(n, 1.0);
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    SeededRng rng(derive_seed(params.seed, {0x706f73, static_cast<std::uint64_t>(t)}));
    EpsilonLedger ledger;
    PerturbStats stats;
    perturb_graph(g, eps, 10.0, rng, ledger, &stats);
    if (stats.clamped > 0) ++bad;
  }
  const double rate = static_cast<double>(bad) / trials;
  return {{"positive_weights", rate <= 0.005,
           "n=" + std::to_string(n) + " eps=" + detail::fmt(eps) + " trials=" + std::to_string(trials) +
               " negative_rate=" + detail::fmt(rate) + " limit=0.005"}};
}

/// Peel tree cost against (19n/5)W + 1/2, and against the exact optimum
/// when n <= 14.
inline std::vector<VerifyLine> verify_peel(const VerifyParams& params) {
  const int n = params.n.value_or(10);
  const double eps = params.epsilon.value_or(0.04);
  SeededRng rng(derive_seed(params.seed, {0x7065656c}));
  const HardInstance hard = gen_hard_instance(n, eps, rng);
  const double cost = dasgupta_cost(hard.graph, peel_tree(hard));
  const double bound = peel_cost_bound(hard);
  std::vector<VerifyLine> out{{"peel_bound", cost <= bound,
                               "n=" + std::to_string(n) + " eps=" + detail::fmt(eps) + " cost=" + detail::fmt(cost) +
                                   " bound=" + detail::fmt(bound)}};
  if (n <= 14) {
    const double opt = brute_force_optimal_tree(hard.graph).cost;
    out.push_back({"peel_above_opt", opt <= cost * (1.0 + 1e-12),
                   "opt=" + detail::fmt(opt) + " peel=" + detail::fmt(cost)});
  }
  return out;
}

/// |cost_w(T) - cost_w'(T)| <= n for random graphs, trees and weight
/// changes of l1 norm at most 1.
inline std::vector<VerifyLine> verify_sensitivity(const VerifyParams& params) {
  const int n = params.n.value_or(10);
  const int trials = params.trials.value_or(200);
  require(n >= 2, ErrorCode::kInvalidArgument, "sensitivity check needs n >= 2");
  int violations = 0;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    SeededRng rng(derive_seed(params.seed, {0x73656e, static_cast<std::uint64_t>(t)}));
    const WeightedGraph g = detail::random_graph(n, 0.5, 1.0, 10.0, rng);
    const HcTree tree = random_tree(n, rng);
    std::vector<double> delta(g.edge_count());
    double l1 = 0.0;
    for (auto& d : delta) {
      d = rng.uniform(-1.0, 1.0);
      l1 += std::abs(d);
    }
    const double radius = rng.uniform_open();
    for (auto& d : delta) d *= l1 > 0 ? radius / l1 : 0.0;
    const double diff = cost_sensitivity_check(g, delta, tree);
    worst = std::max(worst, diff);
    if (diff > n * (1.0 + 1e-12)) ++violations;
  }
  return {{"sensitivity", violations == 0,
           "n=" + std::to_string(n) + " trials=" + std::to_string(trials) + " max_change=" + detail::fmt(worst) +
               " violations=" + std::to_string(violations)}};
}

/// Reduction ledger totals stay within eps and tree depth within 2 log2 n.
inline std::vector<VerifyLine> verify_ledger(const VerifyParams& params) {
  const int n = params.n.value_or(64);
  const double eps = params.epsilon.value_or(1.0);
  const int trials = params.trials.value_or(50);
  require(n >= 2, ErrorCode::kInvalidArgument, "ledger check needs n >= 2");
  const double depth_cap = 2.0 * std::log2(static_cast<double>(n));
  double worst_total = 0.0;
  int worst_depth = 0;
  int over_budget = 0;
  int too_deep = 0;
  const int clusters = std::min(4, n);
  for (int t = 0; t < trials; ++t) {
    SeededRng rng(derive_seed(params.seed, {0x6c6564, static_cast<std::uint64_t>(t)}));
    const auto sizes = even_blocks(n, clusters);
    const WeightedGraph g = gen_sbm(sizes, 0.7, 0.1, WeightRange{1.0, 10.0, false}, rng);
    auto sub = [](const WeightedGraph& h, double eps_h, SeededRng& r) { return dp_cut_subroutine(h, eps_h, r); };
    const auto result = adaptive_reduction_hc(g, eps, sub, rng.child(1));
    worst_total = std::max(worst_total, result.ledger.total());
    worst_depth = std::max(worst_depth, result.tree.depth());
    if (!result.ledger.within_budget()) ++over_budget;
    if (result.tree.depth() > depth_cap) ++too_deep;
  }
  const std::string head = "n=" + std::to_string(n) + " eps=" + detail::fmt(eps) + " trials=" + std::to_string(trials);
  return {{"ledger_total", over_budget == 0, head + " max_total=" + detail::fmt(worst_total)},
          {"tree_depth", too_deep == 0,
           head + " max_depth=" + std::to_string(worst_depth) + " cap=" + detail::fmt(depth_cap)}};
}

/// Exhaustive tree enumeration agrees with the subset DP on small graphs.
inline std::vector<VerifyLine> verify_oracle(const VerifyParams& params) {
  const int n_max = params.n.value_or(7);
  const int trials = params.trials.value_or(200);
  require(n_max >= 2 && n_max <= kMaxEnumerationLeaves, ErrorCode::kInvalidArgument,
          "oracle check needs 2 <= n <= " + std::to_string(kMaxEnumerationLeaves));
  int mismatches = 0;
  int below_opt = 0;
  for (int t = 0; t < trials; ++t) {
    SeededRng rng(derive_seed(params.seed, {0x6f7261, static_cast<std::uint64_t>(t)}));
    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - 1)));
    const WeightedGraph g = detail::random_graph(n, 0.6, 0.5, 5.0, rng);
    const OptimalTree opt = brute_force_optimal_tree(g);
    const double tol = 1e-9 * std::max(1.0, opt.cost);
    double best = std::numeric_limits<double>::infinity();
    TreeEnumerator walker(n);
    walker.run([&](const TreeEnumerator& state) {
      const double c = state.cost(g);
      if (c < opt.cost - tol) ++below_opt;
      best = std::min(best, c);
    });
    if (std::abs(best - opt.cost) > tol) ++mismatches;
  }
  return {{"oracle_agreement", mismatches == 0 && below_opt == 0,
           "trials=" + std::to_string(trials) + " n<=" + std::to_string(n_max) +
               " mismatches=" + std::to_string(mismatches) + " below_opt=" + std::to_string(below_opt)}};
}

inline std::vector<VerifyLine> run_verify_suite(std::string_view suite, const VerifyParams& params) {
  if (suite == "positive") return verify_positive(params);
  if (suite == "peel") return verify_peel(params);
  if (suite == "sensitivity") return verify_sensitivity(params);
  if (suite == "ledger") return verify_ledger(params);
  if (suite == "oracle") return verify_oracle(params);
  if (suite == "all") {
    // Each suite on its own defaults; shared parameters would not fit all.
    VerifyParams defaults;
    defaults.seed = params.seed;
    std::vector<VerifyLine> out;
    for (auto part : {verify_positive(defaults), verify_peel(defaults), verify_sensitivity(defaults),
                      verify_ledger(defaults), verify_oracle(defaults)}) {
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace dphc

#endif  // DPHC_VERIFY_HPP_
