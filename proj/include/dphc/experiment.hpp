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

#ifndef DPHC_EXPERIMENT_HPP_
#define DPHC_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "dphc/algorithms.hpp"
#include "dphc/error.hpp"
#include "dphc/generators.hpp"
#include "dphc/graph.hpp"
#include "dphc/graph_io.hpp"
#include "dphc/hctree.hpp"
#include "dphc/mechanisms.hpp"
#include "dphc/reduction.hpp"
#include "dphc/rng.hpp"
#include "dphc/tree_search.hpp"

namespace dphc {

enum class Algorithm {
  kHcDp,
  kInputPerturbation,
  kSingleLinkage,
  kAverageLinkage,
  kCompleteLinkage,
  kExpMech,
  kNonprivate,
  kBlended,
  kReduction,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kHcDp,    Algorithm::kInputPerturbation, Algorithm::kSingleLinkage,
    Algorithm::kAverageLinkage, Algorithm::kCompleteLinkage, Algorithm::kExpMech,
    Algorithm::kNonprivate,     Algorithm::kBlended,         Algorithm::kReduction,
};

inline std::string_view algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::kHcDp: return "hc_dp";
    case Algorithm::kInputPerturbation: return "input_perturbation";
    case Algorithm::kSingleLinkage: return "single_linkage";
    case Algorithm::kAverageLinkage: return "average_linkage";
    case Algorithm::kCompleteLinkage: return "complete_linkage";
    case Algorithm::kExpMech: return "expmech";
    case Algorithm::kNonprivate: return "nonprivate";
    case Algorithm::kBlended: return "blended";
    case Algorithm::kReduction: return "reduction";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view id) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_id(a) == id) return a;
  }
  throw Error(ErrorCode::kUnknownAlgorithm, "unknown algorithm '" + std::string(id) + "'");
}

inline bool is_private(Algorithm a) { return a != Algorithm::kNonprivate; }

/// Largest n the algorithm accepts, if it has a cap.
inline std::optional<int> size_cap(Algorithm a) {
  if (a == Algorithm::kExpMech || a == Algorithm::kBlended) return kMaxEnumerationLeaves;
  return std::nullopt;
}

inline constexpr double kDefaultEpsilonGrid[] = {0.01, 0.1, 0.5, 1.0, 2.0};

inline const std::vector<Algorithm>& default_compare_algorithms() {
  static const std::vector<Algorithm> algs{Algorithm::kHcDp, Algorithm::kInputPerturbation,
                                           Algorithm::kSingleLinkage, Algorithm::kAverageLinkage,
                                           Algorithm::kCompleteLinkage};
  return algs;
}

struct RunRecord {
  std::string graph_id;
  std::string algorithm;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double cost = 0.0;  // on the original weights
  double wall_time_ms = 0.0;
  double ledger_total = 0.0;
};

struct RunOptions {
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  double overlay_c = 10.0;
  double gamma = kDefaultBalance;
  int restarts = 16;  // random spectral directions per cut
  double c_level = 0.5;       // reduction only
  bool private_eval = false;  // spend half the budget on a private cost release
  bool omit_timing = false;   // report wall_time_ms = 0 for byte-stable output
};

struct RunOutcome {
  RunRecord record;
  HcTree tree;
  EpsilonLedger ledger;
  std::optional<double> released_cost;
};

/// One trial. The algorithm sees `g` only through its own mechanism; the
/// reported cost is always evaluated on `g`'s original weights.
inline RunOutcome run_algorithm(const WeightedGraph& g, std::string graph_id, Algorithm alg, const RunOptions& opts) {
  require(opts.epsilon > 0.0, ErrorCode::kNonPositiveEpsilon, "epsilon must be positive");
  if (auto cap = size_cap(alg); cap && g.vertex_count() > *cap) {
    throw Error(ErrorCode::kTooLargeForEnumeration, std::string(algorithm_id(alg)) + " supports n <= " +
                                                        std::to_string(*cap) + ", got " +
                                                        std::to_string(g.vertex_count()));
  }
  const bool split = opts.private_eval && is_private(alg);
  HcConfig cfg;
  cfg.epsilon = split ? opts.epsilon / 2.0 : opts.epsilon;
  cfg.overlay_c = opts.overlay_c;
  cfg.gamma = opts.gamma;
  cfg.restarts = opts.restarts;
  cfg.seed = opts.seed;
  SeededRng rng = cfg.make_rng();
  EpsilonLedger ledger(opts.epsilon);

  const auto start = std::chrono::steady_clock::now();
  HcTree tree = HcTree::leaf(0);
  switch (alg) {
    case Algorithm::kHcDp: tree = hc_dp(g, cfg, rng, ledger); break;
    case Algorithm::kInputPerturbation: tree = input_perturbation_hc(g, cfg, rng, ledger); break;
    case Algorithm::kSingleLinkage: tree = linkage_hc(g, cfg, LinkageMethod::kSingle, rng, ledger); break;
    case Algorithm::kAverageLinkage: tree = linkage_hc(g, cfg, LinkageMethod::kAverage, rng, ledger); break;
    case Algorithm::kCompleteLinkage: tree = linkage_hc(g, cfg, LinkageMethod::kComplete, rng, ledger); break;
    case Algorithm::kExpMech: tree = exponential_mechanism_hc(g, cfg.epsilon, rng, ledger); break;
    case Algorithm::kNonprivate: tree = nonprivate_hc(g, cfg, rng); break;
    case Algorithm::kBlended: tree = blended_hc(g, cfg, rng, ledger); break;
    case Algorithm::kReduction: {
      ReductionOptions ropts{opts.c_level, opts.gamma};
      auto sub = [&](const WeightedGraph& h, double eps_h, SeededRng& r) {
        return dp_cut_subroutine(h, eps_h, r, opts.gamma, opts.restarts, opts.overlay_c);
      };
      auto result = adaptive_reduction_hc(g, cfg.epsilon, sub, rng, ropts);
      tree = std::move(result.tree);
      for (const auto& e : result.ledger.entries()) ledger.charge(e.label, e.epsilon, e.level, e.subgraph_size);
      break;
    }
  }
  std::optional<double> released;
  if (split) released = private_cost_release(g, tree, opts.epsilon / 2.0, rng, ledger);
  const auto stop = std::chrono::steady_clock::now();

  RunOutcome out{{}, std::move(tree), std::move(ledger), released};
  out.record.graph_id = std::move(graph_id);
  out.record.algorithm = std::string(algorithm_id(alg));
  out.record.epsilon = opts.epsilon;
  out.record.seed = opts.seed;
  out.record.cost = dasgupta_cost(g, out.tree);
  out.record.wall_time_ms =
      opts.omit_timing ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();
  out.record.ledger_total = out.ledger.total();
  return out;
}

inline constexpr std::string_view kRunCsvHeader = "graph_id,algorithm,epsilon,seed,cost,wall_time_ms,ledger_total";

inline void write_record(std::ostream& out, const RunRecord& r) {
  out << r.graph_id << ',' << r.algorithm << ',' << detail::format_double(r.epsilon) << ',' << r.seed << ','
      << detail::format_double(r.cost) << ',' << detail::format_double(r.wall_time_ms) << ','
      << detail::format_double(r.ledger_total) << '\n';
}

inline void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : records) write_record(out, r);
}

/// Canonical row order: graph_id, algorithm, epsilon, seed.
inline void sort_records(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.graph_id, a.algorithm, a.epsilon, a.seed) < std::tie(b.graph_id, b.algorithm, b.epsilon, b.seed);
  });
}

/// Worker count: DPHC_THREADS when set to a positive integer, otherwise the
/// number of hardware threads.
inline unsigned resolve_threads() {
  if (const char* env = std::getenv("DPHC_THREADS")) {
    unsigned value = 0;
    if (detail::parse_number(std::string_view(env), value) && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs job(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any job is rethrown after all workers finish.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

struct NamedGraph {
  std::string id;
  WeightedGraph graph;
};

struct CompareSpec {
  std::vector<NamedGraph> graphs;
  std::vector<Algorithm> algorithms = default_compare_algorithms();
  std::vector<double> epsilons{std::begin(kDefaultEpsilonGrid), std::end(kDefaultEpsilonGrid)};
  int trials = 1;
  std::uint64_t seed = 0;
  RunOptions base;  // epsilon and seed are overwritten per trial
  unsigned threads = 0;  // 0: resolve_threads()
};

/// Seed of trial t on graph g: shared by every algorithm and epsilon so that
/// cells are compared on common random streams.
inline std::uint64_t trial_seed(std::uint64_t master, std::size_t graph_index, int trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(graph_index), static_cast<std::uint64_t>(trial)});
}

/// Full factorial graph x algorithm x epsilon x trial; rows in canonical order.
inline std::vector<RunRecord> run_compare(const CompareSpec& spec) {
  require(spec.trials >= 1, ErrorCode::kInvalidArgument, "trials must be positive");
  require(!spec.graphs.empty() && !spec.algorithms.empty() && !spec.epsilons.empty(), ErrorCode::kInvalidArgument,
          "compare needs graphs, algorithms and epsilons");
  for (const auto& ng : spec.graphs) {
    require(ng.id.find_first_of(",\n\"") == std::string::npos, ErrorCode::kInvalidArgument,
            "graph id must not contain commas, quotes or newlines");
    for (Algorithm a : spec.algorithms) {
      if (auto cap = size_cap(a); cap && ng.graph.vertex_count() > *cap) {
        throw Error(ErrorCode::kTooLargeForEnumeration,
                    std::string(algorithm_id(a)) + " cannot run on " + ng.id + " (n > " + std::to_string(*cap) + ")");
      }
    }
  }
  struct Task {
    std::size_t graph;
    Algorithm alg;
    double epsilon;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t gi = 0; gi < spec.graphs.size(); ++gi) {
    for (Algorithm a : spec.algorithms) {
      for (double eps : spec.epsilons) {
        for (int t = 0; t < spec.trials; ++t) tasks.push_back({gi, a, eps, t});
      }
    }
  }
  std::vector<RunRecord> records(tasks.size());
  parallel_for(tasks.size(), spec.threads == 0 ? resolve_threads() : spec.threads, [&](std::size_t i) {
    const Task& task = tasks[i];
    RunOptions opts = spec.base;
    opts.epsilon = task.epsilon;
    opts.seed = trial_seed(spec.seed, task.graph, task.trial);
    const auto& ng = spec.graphs[task.graph];
    records[i] = run_algorithm(ng.graph, ng.id, task.alg, opts).record;
  });
  sort_records(records);
  return records;
}

struct CellSummary {
  std::string graph_id;
  std::string algorithm;
  double epsilon = 0.0;
  int trials = 0;
  double mean_cost = 0.0;
  double min_cost = 0.0;
  double max_cost = 0.0;
  double max_ledger_total = 0.0;
};

/// Mean, min and max cost per (graph, algorithm, epsilon) cell.
inline std::vector<CellSummary> summarize(const std::vector<RunRecord>& records) {
  std::map<std::tuple<std::string, std::string, double>, CellSummary> cells;
  for (const auto& r : records) {
    auto [it, fresh] = cells.try_emplace({r.graph_id, r.algorithm, r.epsilon});
    CellSummary& c = it->second;
    if (fresh) {
      c = {r.graph_id, r.algorithm, r.epsilon, 0, 0.0, r.cost, r.cost, r.ledger_total};
    }
    ++c.trials;
    c.mean_cost += r.cost;
    c.min_cost = std::min(c.min_cost, r.cost);
    c.max_cost = std::max(c.max_cost, r.cost);
    c.max_ledger_total = std::max(c.max_ledger_total, r.ledger_total);
  }
  std::vector<CellSummary> out;
  for (auto& [key, c] : cells) {
    c.mean_cost /= c.trials;
    // Guard the mean against rounding past an extreme when all values agree.
    c.mean_cost = std::clamp(c.mean_cost, c.min_cost, c.max_cost);
    out.push_back(c);
  }
  return out;
}

/// Cross-graph aggregate: cost means per (algorithm, epsilon) over all graphs.
inline std::map<std::pair<std::string, double>, double> mean_by_algorithm(const std::vector<RunRecord>& records) {
  std::map<std::pair<std::string, double>, std::pair<double, int>> acc;
  for (const auto& r : records) {
    auto& [sum, count] = acc[{r.algorithm, r.epsilon}];
    sum += r.cost;
    ++count;
  }
  std::map<std::pair<std::string, double>, double> out;
  for (const auto& [key, v] : acc) out[key] = v.first / v.second;
  return out;
}

inline void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << "graph_id,algorithm,epsilon,trials,mean_cost,min_cost,max_cost,max_ledger_total\n";
  for (const auto& c : cells) {
    out << c.graph_id << ',' << c.algorithm << ',' << detail::format_double(c.epsilon) << ',' << c.trials << ','
        << detail::format_double(c.mean_cost) << ',' << detail::format_double(c.min_cost) << ','
        << detail::format_double(c.max_cost) << ',' << detail::format_double(c.max_ledger_total) << '\n';
  }
}

/// Default experiment graph: SBM on blocks 20,20,30,30,50 with p = 0.7,
/// q = 0.1 and continuous weights on [1, 10].
inline WeightedGraph default_sbm(std::uint64_t seed) {
  static constexpr int kSizes[] = {20, 20, 30, 30, 50};
  SeededRng rng(seed);
  return gen_sbm(kSizes, 0.7, 0.1, WeightRange{1.0, 10.0, false}, rng);
}

struct BenchSpec {
  std::vector<int> sizes;
  Algorithm algorithm = Algorithm::kHcDp;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  int trials = 1;
  int clusters = 5;
  double p = 0.7;
  double q = 0.1;
  RunOptions base;
};

struct BenchRecord {
  int n = 0;
  RunRecord run;
};

inline constexpr std::string_view kBenchCsvHeader = "n,graph_id,algorithm,epsilon,seed,cost,wall_time_ms,ledger_total";

/// Runtime scaling on SBM graphs with `clusters` near-equal blocks. Rows
/// follow the input size order. Sizes above an algorithm's cap are refused
/// before anything runs.
inline std::vector<BenchRecord> run_bench_scaling(const BenchSpec& spec, std::ostream* progress = nullptr) {
  require(!spec.sizes.empty(), ErrorCode::kInvalidArgument, "no sizes given");
  require(spec.trials >= 1, ErrorCode::kInvalidArgument, "trials must be positive");
  for (int n : spec.sizes) {
    require(n >= spec.clusters, ErrorCode::kInvalidArgument,
            "size " + std::to_string(n) + " is below the cluster count " + std::to_string(spec.clusters));
    if (auto cap = size_cap(spec.algorithm); cap && n > *cap) {
      throw Error(ErrorCode::kTooLargeForEnumeration, std::string(algorithm_id(spec.algorithm)) +
                                                          " refuses n = " + std::to_string(n) + " (cap " +
                                                          std::to_string(*cap) + ")");
    }
  }
  std::vector<BenchRecord> out;
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    const int n = spec.sizes[i];
    SeededRng graph_rng(derive_seed(spec.seed, {0x6e, static_cast<std::uint64_t>(i)}));
    const auto sizes = even_blocks(n, spec.clusters);
    const WeightedGraph g = gen_sbm(sizes, spec.p, spec.q, WeightRange{1.0, 10.0, false}, graph_rng);
    const std::string id = "sbm" + std::to_string(spec.clusters) + "_n" + std::to_string(n);
    for (int t = 0; t < spec.trials; ++t) {
      RunOptions opts = spec.base;
      opts.epsilon = spec.epsilon;
      opts.seed = trial_seed(spec.seed, i, t);
      auto outcome = run_algorithm(g, id, spec.algorithm, opts);
      if (progress != nullptr) {
        *progress << "n=" << n << " trial=" << t << " wall_time_ms=" << outcome.record.wall_time_ms << '\n';
      }
      out.push_back({n, std::move(outcome.record)});
    }
  }
  return out;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.n << ',';
    write_record(out, row.run);
  }
}

}  // namespace dphc

#endif  // DPHC_EXPERIMENT_HPP_
