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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dphc/dphc.hpp"
#include "oracles.hpp"

namespace {

using namespace dphc;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

HcTree to_hc(const oracle::Tree& t) {
  if (!t->left) return HcTree::leaf(t->leaves.front());
  return HcTree::join(to_hc(t->left), to_hc(t->right));
}

int pick(SeededRng& rng, int lo, int hi) { return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))); }

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

/// Random tree by recursive uniform splits, built without library code.
oracle::Tree random_oracle_tree(std::vector<Vertex> labels, SeededRng& rng) {
  if (labels.size() == 1) return oracle::leaf(labels[0]);
  for (std::size_t i = labels.size() - 1; i > 0; --i) std::swap(labels[i], labels[pick(rng, 0, static_cast<int>(i))]);
  const int cut = pick(rng, 1, static_cast<int>(labels.size()) - 1);
  std::vector<Vertex> a(labels.begin(), labels.begin() + cut);
  std::vector<Vertex> b(labels.begin() + cut, labels.end());
  return oracle::join(random_oracle_tree(std::move(a), rng), random_oracle_tree(std::move(b), rng));
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int violations = 0;
  long trees = 0;
  for (int i = 0; i < 200; ++i) {
    SeededRng draw(derive_seed(11, {static_cast<std::uint64_t>(i)}));
    const int n = pick(draw, 2, 7);
    const double p = draw.uniform(0.3, 1.0);
    const auto g = oracle::random_graph(n, p, 0.5, 10.0, derive_seed(12, {static_cast<std::uint64_t>(i)}));
    const OptimalTree dp = brute_force_optimal_tree(g);
    const double scale = 1e-9 * std::max(1.0, dp.cost);
    if (!rel_close(dasgupta_cost(g, dp.tree), dp.cost, 1e-9)) ++violations;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : oracle::all_trees(n)) {
      const double cost = dasgupta_cost(g, to_hc(t));
      if (!rel_close(cost, oracle::split_cost(g, t), 1e-9)) ++violations;
      if (cost < dp.cost - scale) ++violations;
      best = std::min(best, cost);
      ++trees;
    }
    if (!rel_close(best, dp.cost, 1e-9)) ++violations;
  }
  const double secs = seconds_since(start);
  return {violations == 0 && secs < 60.0,
          "graphs=200 trees=" + std::to_string(trees) + " violations=" + std::to_string(violations) +
              " time_s=" + fmt(secs)};
}

Outcome sensitivity_bound() {
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SeededRng rng(derive_seed(21, {static_cast<std::uint64_t>(i)}));
    const int n = pick(rng, 2, 12);
    auto g = oracle::random_graph(n, rng.uniform(0.2, 1.0), 0.0, 5.0, derive_seed(22, {static_cast<std::uint64_t>(i)}));
    if (g.edge_count() == 0) g = oracle::path(n);
    std::vector<Vertex> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 0);
    const oracle::Tree t = random_oracle_tree(labels, rng);

    // Random direction scaled to l1 norm in (0, 1], kept nonnegative.
    std::vector<double> delta(g.edge_count());
    double l1 = 0.0;
    for (auto& d : delta) l1 += std::abs(d = rng.uniform(-1.0, 1.0));
    const double target = rng.uniform(0.0, 1.0);
    std::vector<Edge> shifted(g.edges().begin(), g.edges().end());
    for (std::size_t e = 0; e < delta.size(); ++e) {
      delta[e] *= target / l1;
      delta[e] = std::max(delta[e], -shifted[e].w);
      shifted[e].w += delta[e];
    }
    const WeightedGraph neighbor(n, std::move(shifted));
    const double oracle_gap = std::abs(oracle::split_cost(g, t) - oracle::split_cost(neighbor, t));
    const double lib_gap = cost_sensitivity_check(g, delta, to_hc(t));
    worst = std::max({worst, oracle_gap / n, lib_gap / n});
    if (oracle_gap > n + 1e-9 || lib_gap > n + 1e-9 || !rel_close(oracle_gap, lib_gap, 1e-9)) ++violations;
  }
  return {violations == 0, "triples=1000 violations=" + std::to_string(violations) + " max_gap_over_n=" + fmt(worst)};
}

Outcome positive_weights() {
  const auto g = oracle::complete(50);
  int negative_trials = 0;
  for (int i = 0; i < 1000; ++i) {
    SeededRng rng(derive_seed(31, {static_cast<std::uint64_t>(i)}));
    EpsilonLedger ledger;
    PerturbStats stats;
    (void)perturb_graph(g, 0.5, 10.0, rng, ledger, &stats);
    if (stats.clamped > 0) ++negative_trials;
  }
  const double frac = negative_trials / 1000.0;
  return {frac <= 0.005, "K50 eps=0.5 trials=1000 negative_fraction=" + fmt(frac) + " limit=0.005"};
}

Outcome peel_bound() {
  std::ostringstream detail;
  bool ok = true;
  const auto start = std::chrono::steady_clock::now();
  for (int n : {10, 20}) {
    for (double eps : {0.04, 0.01}) {
      SeededRng rng(derive_seed(41, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(eps * 1e4)}));
      const HardInstance hard = gen_hard_instance(n, eps, rng);
      const double heavy = 1.0 / (20.0 * eps);
      const double bound = 19.0 * n / 5.0 * heavy + 0.5;
      const double cost = dasgupta_cost(hard.graph, peel_tree(hard));
      ok = ok && cost <= bound;
      detail << " n" << n << "_eps" << fmt(eps) << "=" << fmt(cost) << "/" << fmt(bound);
      if (n == 10) {
        const double opt = brute_force_optimal_tree(hard.graph).cost;
        ok = ok && cost >= opt - 1e-9 * opt;
        detail << "(opt " << fmt(opt) << ")";
      }
    }
  }
  const double secs = seconds_since(start);
  ok = ok && secs < 300.0;
  detail << " time_s=" << fmt(secs);
  return {ok, "cost/bound:" + detail.str()};
}

Outcome small_scale_utility() {
  int good = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    SeededRng draw(derive_seed(51, {static_cast<std::uint64_t>(i)}));
    const int n = pick(draw, 4, 14);
    const double p = draw.uniform(0.2, 0.6);
    WeightedGraph g;
    for (std::uint64_t attempt = 0;; ++attempt) {
      g = oracle::random_graph(n, p, 1.0, 1.0, derive_seed(52, {static_cast<std::uint64_t>(i), attempt}));
      if (oracle::connected(g)) break;
    }
    const double phi = oracle::best_balanced_cut(g, 1, true).expansion;
    HcConfig cfg;
    cfg.epsilon = 1.0;
    cfg.seed = derive_seed(53, {static_cast<std::uint64_t>(i)});
    const HcRun run = hc_dp(g, cfg);
    const auto top = run.tree.leaves(run.tree.node(run.tree.root()).left);
    const double psi = sparsity(g, VertexSet(top));
    const double limit = (1.0 + 40.0 * std::log(static_cast<double>(n)) / cfg.epsilon) * phi;
    worst_ratio = std::max(worst_ratio, psi / phi);
    if (psi <= limit) ++good;
  }
  return {good >= 95, "graphs=100 within_bound=" + std::to_string(good) + " worst_psi_over_phi=" + fmt(worst_ratio)};
}

Outcome experiment_ordering() {
  const auto start = std::chrono::steady_clock::now();
  CompareSpec spec;
  for (int i = 0; i < 10; ++i) {
    spec.graphs.push_back({"sbm" + std::to_string(i), default_sbm(derive_seed(61, {static_cast<std::uint64_t>(i)}))});
  }
  spec.algorithms = {Algorithm::kHcDp, Algorithm::kInputPerturbation, Algorithm::kNonprivate};
  spec.epsilons = {0.01, 0.1, 0.5, 1.0, 2.0};
  spec.trials = 5;
  spec.seed = 62;
  const auto means = mean_by_algorithm(run_compare(spec));
  bool ok = true;
  std::ostringstream detail;
  for (double eps : spec.epsilons) {
    const double dp = means.at({"hc_dp", eps});
    const double inp = means.at({"input_perturbation", eps});
    const double np = means.at({"nonprivate", eps});
    const bool beats = dp < inp;
    const bool near = eps < 0.5 || dp <= 2.0 * np;
    ok = ok && beats && near;
    detail << " eps=" << fmt(eps) << "[hc_dp=" << fmt(dp) << " inp=" << fmt(inp) << " np=" << fmt(np)
           << (beats ? "" : " hc_dp>=inp") << (near ? "" : " hc_dp>2np") << "]";
  }
  const double secs = seconds_since(start);
  ok = ok && secs < 900.0;
  detail << " time_s=" << fmt(secs);
  return {ok, "means:" + detail.str()};
}

Outcome reduction_ledger() {
  int runs = 0;
  int violations = 0;
  int worst_depth = 0;
  double worst_total = 0.0;
  for (int n : {16, 64, 256}) {
    for (double eps : {0.5, 1.0}) {
      for (int r = 0; r < 50; ++r) {
        const auto n64 = static_cast<std::uint64_t>(n);
        const auto e64 = static_cast<std::uint64_t>(eps * 10);
        const auto r64 = static_cast<std::uint64_t>(r);
        const auto g = oracle::random_graph(n, 0.3, 1.0, 10.0, derive_seed(71, {n64, e64, r64}));
        const SeededRng rng(derive_seed(72, {n64, e64, r64}));
        const auto result = adaptive_reduction_hc(
            g, eps, [](const WeightedGraph& h, double eps_h, SeededRng& local) { return dp_cut_subroutine(h, eps_h, local); },
            rng);
        const int depth = result.tree.depth();
        worst_depth = std::max(worst_depth, depth);
        worst_total = std::max(worst_total, result.ledger.total() / eps);
        if (result.ledger.total() > eps * (1.0 + 1e-12) || depth > 2.0 * std::log2(static_cast<double>(n))) ++violations;
        ++runs;
      }
    }
  }
  return {violations == 0, "runs=" + std::to_string(runs) + " violations=" + std::to_string(violations) +
                               " max_total_over_eps=" + fmt(worst_total) + " max_depth=" + std::to_string(worst_depth)};
}

Outcome expmech_distribution() {
  const auto g = oracle::path(4);
  const double eps = 20.0;
  std::vector<std::string> keys;
  std::vector<double> costs;
  for (const auto& t : oracle::all_trees(4)) {
    keys.push_back(serialize_tree(to_hc(t).canonical()));
    costs.push_back(oracle::split_cost(g, t));
  }
  const auto expected = oracle::softmax_neg(costs, eps / (2.0 * 4));
  std::map<std::string, int> counts;
  SeededRng rng(81);
  for (int i = 0; i < 5000; ++i) {
    EpsilonLedger ledger;
    ++counts[serialize_tree(exponential_mechanism_hc(g, eps, rng, ledger).canonical())];
  }
  double worst = 0.0;
  int unknown = 5000;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const int c = counts.count(keys[k]) ? counts.at(keys[k]) : 0;
    unknown -= c;
    worst = std::max(worst, std::abs(c / 5000.0 - expected[k]));
  }
  return {keys.size() == 15 && unknown == 0 && worst <= 0.03,
          "trees=" + std::to_string(keys.size()) + " draws=5000 max_abs_dev=" + fmt(worst) + " limit=0.03"};
}

Outcome scalability() {
  std::ostringstream detail;
  bool ok = true;
  BenchSpec spec;
  spec.sizes = {250, 500, 1000, 1500};
  spec.algorithm = Algorithm::kHcDp;
  spec.epsilon = 1.0;
  spec.seed = 91;
  const auto rows = run_bench_scaling(spec);
  ok = ok && rows.size() == spec.sizes.size();
  for (const auto& r : rows) {
    const bool finite = std::isfinite(r.run.wall_time_ms) && r.run.wall_time_ms >= 0.0 && std::isfinite(r.run.cost);
    ok = ok && finite;
    detail << " n" << r.n << "_ms=" << fmt(r.run.wall_time_ms);
  }
  const double largest_s = rows.empty() ? 0.0 : rows.back().run.wall_time_ms / 1000.0;
  ok = ok && !rows.empty() && rows.back().n == 1500 && largest_s < 120.0;

  SeededRng rng(92);
  const auto small = oracle::random_graph(8, 0.5, 1.0, 10.0, 93);
  EpsilonLedger ledger;
  const HcTree sampled = exponential_mechanism_hc(small, 1.0, rng, ledger);
  const bool feasible8 = sampled.covers(8);
  bool refused12 = false;
  try {
    (void)run_algorithm(oracle::random_graph(12, 0.5, 1.0, 10.0, 94), "n12", Algorithm::kExpMech, RunOptions{});
  } catch (const Error& e) {
    refused12 = e.code() == ErrorCode::kTooLargeForEnumeration;
  }
  ok = ok && feasible8 && refused12;
  detail << " expmech_n8=" << (feasible8 ? "ok" : "failed") << " expmech_n12=" << (refused12 ? "refused" : "accepted");
  return {ok, "hc_dp" + detail.str()};
}

Outcome sbm_statistics() {
  const int sizes[] = {20, 20, 30, 30, 50};
  std::vector<double> counts;
  for (std::uint64_t s = 0; s < 50; ++s) {
    SeededRng rng(derive_seed(101, {s}));
    counts.push_back(static_cast<double>(gen_sbm(sizes, 0.7, 0.1, WeightRange{1.0, 10.0, false}, rng).edge_count()));
  }
  // Expected count from the block structure: sum over pairs of its edge probability.
  double intra = 0.0;
  int total = 0;
  for (int s : sizes) {
    intra += s * (s - 1) / 2.0;
    total += s;
  }
  const double expected = 0.7 * intra + 0.1 * (total * (total - 1) / 2.0 - intra);
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / counts.size();
  double ss = 0.0;
  for (double c : counts) ss += (c - mean) * (c - mean);
  const double se = std::sqrt(ss / (counts.size() - 1)) / std::sqrt(static_cast<double>(counts.size()));
  return {std::abs(mean - expected) <= 3.0 * se,
          "mean=" + fmt(mean) + " expected=" + fmt(expected) + " se=" + fmt(se) + " z=" + fmt((mean - expected) / se)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle_equivalence", oracle_equivalence},   {"sensitivity_bound", sensitivity_bound},
      {"positive_weights", positive_weights},       {"peel_bound", peel_bound},
      {"small_scale_utility", small_scale_utility}, {"experiment_ordering", experiment_ordering},
      {"reduction_ledger", reduction_ledger},       {"expmech_distribution", expmech_distribution},
      {"scalability", scalability},                 {"sbm_statistics", sbm_statistics},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("%s %d %s: %s\n", out.pass ? "PASS" : "FAIL", index++, name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
