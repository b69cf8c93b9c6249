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

#ifndef DPHC_MECHANISMS_HPP_
#define DPHC_MECHANISMS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dphc/error.hpp"
#include "dphc/graph.hpp"
#include "dphc/hctree.hpp"
#include "dphc/rng.hpp"

namespace dphc {

/// Append-only record of privacy charges. Pure bookkeeping: charging past the
/// budget is allowed and shows up as `within_budget() == false`.
class EpsilonLedger {
 public:
  struct Entry {
    std::string label;
    double epsilon;
    int level = -1;          // recursion level, when the charge belongs to one
    int subgraph_size = -1;  // |H| for per-subgraph charges
  };

  EpsilonLedger() = default;
  explicit EpsilonLedger(double budget) : budget_(budget) {}

  void charge(std::string label, double epsilon, int level = -1, int subgraph_size = -1) {
    require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "ledger charge must be positive");
    entries_.push_back({std::move(label), epsilon, level, subgraph_size});
    total_ += epsilon;
  }

  [[nodiscard]] double total() const noexcept { return total_; }
  [[nodiscard]] double budget() const noexcept { return budget_; }
  [[nodiscard]] bool within_budget(double rel_tol = 1e-12) const { return total_ <= budget_ * (1.0 + rel_tol); }
  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

  /// Sum of charges recorded at `level`.
  [[nodiscard]] double level_total(int level) const {
    double sum = 0.0;
    for (const auto& e : entries_) {
      if (e.level == level) sum += e.epsilon;
    }
    return sum;
  }

  /// CSV with columns level, subgraph_size, epsilon_charge.
  void write_csv(std::ostream& out) const {
    out << "level,subgraph_size,epsilon_charge\n";
    out.precision(17);
    for (const auto& e : entries_) out << e.level << ',' << e.subgraph_size << ',' << e.epsilon << '\n';
  }

 private:
  double budget_ = std::numeric_limits<double>::infinity();
  double total_ = 0.0;
  std::vector<Entry> entries_;
};

/// Inverse-CDF Laplace transform of a uniform draw u in (0,1).
inline double laplace_from_uniform(double u, double scale) {
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double sign = centered > 0 ? 1.0 : -1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(centered));
}

/// One draw from Lap(scale); zero in noise-disabled mode.
inline double sample_laplace(SeededRng& rng, double scale) {
  require(scale > 0.0, ErrorCode::kNonPositiveScale, "Laplace scale must be positive");
  if (!rng.noise_enabled()) return 0.0;
  return laplace_from_uniform(rng.uniform_open(), scale);
}

/// Laplace CDF with location 0.
inline double laplace_cdf(double x, double scale) {
  return x < 0 ? 0.5 * std::exp(x / scale) : 1.0 - 0.5 * std::exp(-x / scale);
}

struct PerturbStats {
  std::size_t clamped = 0;  // edges whose pre-clamp weight was negative
  double min_raw = std::numeric_limits<double>::infinity();
};

/// Overlay-and-noise input perturbation:
///   w''(e) = max(0, w(e) + overlay_c * ln(n) / eps + Lap(1/eps)).
/// Reads the input edge list exactly once and charges `epsilon` once.
template <EdgeSource G>
WeightedGraph perturb_graph(const G& g, double epsilon, double overlay_c, SeededRng& rng, EpsilonLedger& ledger,
                            PerturbStats* stats = nullptr) {
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  require(overlay_c >= 0.0, ErrorCode::kInvalidArgument, "overlay constant must be nonnegative");
  const int n = g.vertex_count();
  const std::span<const Edge> input = g.edges();
  const double shift = n > 1 ? overlay_c * std::log(static_cast<double>(n)) / epsilon : 0.0;
  std::vector<Edge> edges(input.begin(), input.end());
  PerturbStats local;
  for (auto& e : edges) {
    const double raw = e.w + shift + sample_laplace(rng, 1.0 / epsilon);
    local.min_raw = std::min(local.min_raw, raw);
    if (raw < 0.0) ++local.clamped;
    e.w = std::max(0.0, raw);
  }
  ledger.charge(overlay_c > 0.0 ? "perturb_overlay" : "perturb_plain", epsilon);
  if (stats != nullptr) *stats = local;
  return WeightedGraph(n, std::move(edges));
}

/// Plain input perturbation: Lap(1/eps) per edge, clamped at zero.
template <EdgeSource G>
WeightedGraph perturb_graph_plain(const G& g, double epsilon, SeededRng& rng, EpsilonLedger& ledger,
                                  PerturbStats* stats = nullptr) {
  return perturb_graph(g, epsilon, 0.0, rng, ledger, stats);
}

/// Laplace mechanism on a scalar.
inline double private_scalar(double value, double sensitivity, double epsilon, SeededRng& rng,
                             EpsilonLedger& ledger) {
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  require(sensitivity > 0.0, ErrorCode::kNonPositiveSensitivity, "sensitivity must be positive");
  const double released = value + sample_laplace(rng, sensitivity / epsilon);
  ledger.charge("private_scalar", epsilon);
  return released;
}

/// Upward-shifted private cost: cost + 10 n ln(n)/eps + Lap(n/eps). The shift
/// makes the release an overestimate except with probability n^-10 / 2.
inline double private_cost_release(const WeightedGraph& g, const HcTree& tree, double epsilon, SeededRng& rng,
                                   EpsilonLedger& ledger) {
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  const double cost = dasgupta_cost(g, tree);
  const double n = g.vertex_count();
  const double shift = n > 1 ? 10.0 * n * std::log(n) / epsilon : 0.0;
  const double released = cost + shift + sample_laplace(rng, std::max(n, 1.0) / epsilon);
  ledger.charge("private_cost_release", epsilon);
  return released;
}

/// Index of the candidate with the smallest private cost; each candidate is
/// released with epsilon / k. Ties go to the lower index.
inline std::size_t private_select_best_index(const WeightedGraph& g, std::span<const HcTree> candidates,
                                             double epsilon, SeededRng& rng, EpsilonLedger& ledger) {
  require(!candidates.empty(), ErrorCode::kEmptyCandidateList, "no candidate trees");
  require(epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  const double share = epsilon / static_cast<double>(candidates.size());
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double value = private_cost_release(g, candidates[i], share, rng, ledger);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

inline HcTree private_select_best(const WeightedGraph& g, std::span<const HcTree> candidates, double epsilon,
                                  SeededRng& rng, EpsilonLedger& ledger) {
  return candidates[private_select_best_index(g, candidates, epsilon, rng, ledger)];
}

/// Basic composition: total epsilon of a sequence of pure-DP steps.
inline double compose_basic(std::span<const double> charges) {
  return std::accumulate(charges.begin(), charges.end(), 0.0);
}

/// Advanced composition of k eps-DP steps at slack delta':
///   sqrt(2k ln(1/delta')) * eps + k * eps * (e^eps - 1).
/// Reporting only; nothing in the library splits budgets with it.
inline double compose_strong(std::size_t k, double epsilon, double delta_prime) {
  require(delta_prime > 0.0, ErrorCode::kNonPositiveDeltaPrime, "delta' must be positive");
  require(epsilon >= 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be nonnegative");
  const double kd = static_cast<double>(k);
  return std::sqrt(2.0 * kd * std::log(1.0 / delta_prime)) * epsilon + kd * epsilon * std::expm1(epsilon);
}

}  // namespace dphc

#endif  // DPHC_MECHANISMS_HPP_
