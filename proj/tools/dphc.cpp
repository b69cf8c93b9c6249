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

// dphc: generate instances, run private hierarchical clustering, compare
// algorithms over epsilon grids, benchmark runtime and run verification suites.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dphc/dphc.hpp"
#include "dphc/svg.hpp"

namespace {

using namespace dphc;

void print_summary(const WeightedGraph& g) {
  std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count() << " min_weight=";
  if (auto w = g.min_weight()) {
    std::cout << detail::format_double(*w);
  } else {
    std::cout << "none";
  }
  std::cout << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  return out;
}

struct GenerateArgs {
  std::string out;
  std::uint64_t seed = 0;
  std::vector<int> sizes{20, 20, 30, 30, 50};
  double p = 0.7;
  double q = 0.1;
  double q_far = 0.05;
  double wmin = 1.0;
  double wmax = 10.0;
  bool integer_weights = false;
  int n = 10;
  double eps = 0.04;
  std::string features;
  std::string preset;
  double sigma = 0.0;
  double tau = 1e-3;
  bool no_rescale = false;
  bool skip_header = false;
};

void add_generate(CLI::App& app, GenerateArgs& a) {
  auto* gen = app.add_subcommand("generate", "Write a generated instance as an edge list");
  gen->require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--out", a.out, "Output edge-list path")->required();
    sub->add_option("--seed", a.seed, "Random seed");
  };
  auto weights = [&](CLI::App* sub) {
    sub->add_option("--wmin", a.wmin, "Smallest edge weight");
    sub->add_option("--wmax", a.wmax, "Largest edge weight");
    sub->add_flag("--integer-weights", a.integer_weights, "Draw integer weights");
  };

  auto* sbm = gen->add_subcommand("sbm", "Stochastic block model");
  common(sbm);
  weights(sbm);
  sbm->add_option("--sizes", a.sizes, "Block sizes")->delimiter(',');
  sbm->add_option("--p", a.p, "Intra-block edge probability");
  sbm->add_option("--q", a.q, "Inter-block edge probability");
  sbm->callback([&] {
    SeededRng rng(a.seed);
    const auto g = gen_sbm(a.sizes, a.p, a.q, WeightRange{a.wmin, a.wmax, a.integer_weights}, rng);
    write_graph(g, std::filesystem::path(a.out));
    print_summary(g);
  });

  auto* hsbm = gen->add_subcommand("hsbm", "Two-level hierarchical block model");
  common(hsbm);
  weights(hsbm);
  hsbm->add_option("--sizes", a.sizes, "Cluster sizes")->delimiter(',');
  hsbm->add_option("--p", a.p, "Intra-cluster edge probability");
  hsbm->add_option("--q-sibling", a.q, "Probability between sibling clusters");
  hsbm->add_option("--q-far", a.q_far, "Probability between other clusters");
  hsbm->callback([&] {
    SeededRng rng(a.seed);
    const auto g = gen_hsbm(a.sizes, a.p, a.q, a.q_far, WeightRange{a.wmin, a.wmax, a.integer_weights}, rng);
    write_graph(g, std::filesystem::path(a.out));
    print_summary(g);
  });

  auto* hard = gen->add_subcommand("hard", "Complete graph with heavy random 5-cycles");
  common(hard);
  hard->add_option("--n", a.n, "Vertex count (multiple of 5)");
  hard->add_option("--eps", a.eps, "Epsilon setting the heavy weight 1/(20 eps)");
  hard->callback([&] {
    SeededRng rng(a.seed);
    const auto inst = gen_hard_instance(a.n, a.eps, rng);
    for (const auto& w : inst.warnings) std::cerr << "warning: " << w << '\n';
    write_graph(inst.graph, std::filesystem::path(a.out));
    print_summary(inst.graph);
    std::cout << "peel_cost=" << detail::format_double(dasgupta_cost(inst.graph, peel_tree(inst)))
              << " peel_bound=" << detail::format_double(peel_cost_bound(inst)) << '\n';
  });

  auto* cycles = gen->add_subcommand("cycles5", "Disjoint unit-weight 5-cycles");
  common(cycles);
  cycles->add_option("--n", a.n, "Vertex count (multiple of 5)");
  cycles->callback([&] {
    SeededRng rng(a.seed);
    const auto g = gen_random_5cycles(a.n, rng);
    write_graph(g, std::filesystem::path(a.out));
    print_summary(g);
  });

  auto* kernel = gen->add_subcommand("kernel", "Gaussian-kernel similarity graph from a feature CSV");
  kernel->add_option("-o,--out", a.out, "Output edge-list path")->required();
  kernel->add_option("--features", a.features, "Feature CSV, one point per row")->required()->check(CLI::ExistingFile);
  auto* sigma = kernel->add_option("--sigma", a.sigma, "Kernel bandwidth");
  auto* preset = kernel->add_option("--preset", a.preset, "Bandwidth preset: iris, wine or boston");
  sigma->excludes(preset);
  kernel->add_option("--tau", a.tau, "Drop pairs with similarity below tau");
  kernel->add_flag("--no-rescale", a.no_rescale, "Keep raw kernel weights");
  kernel->add_flag("--skip-header", a.skip_header, "Ignore the first CSV line");
  kernel->callback([&] {
    const double s = a.preset.empty() ? a.sigma : kernel_sigma_preset(a.preset);
    const auto points = read_feature_csv(std::filesystem::path(a.features), a.skip_header);
    const auto g = kernel_graph(points, s, a.tau, !a.no_rescale);
    write_graph(g, std::filesystem::path(a.out));
    print_summary(g);
  });
}

struct RunArgs {
  std::string graph;
  std::string alg = "hc_dp";
  RunOptions opts;
  bool emit_tree = false;
};

void add_run_options(CLI::App* sub, RunOptions& opts) {
  sub->add_option("--overlay-c", opts.overlay_c, "Overlay constant c in c ln(n) / eps");
  sub->add_option("--restarts", opts.restarts, "Random spectral directions per cut");
  sub->add_option("--c-level", opts.c_level, "Reduction budget constant");
  sub->add_flag("--private-eval", opts.private_eval, "Spend half the budget releasing the cost privately");
  sub->add_flag("--omit-timing", opts.omit_timing, "Report wall_time_ms as 0");
}

void add_run(CLI::App& app, RunArgs& a) {
  auto* run = app.add_subcommand("run", "Run one algorithm on an edge-list graph");
  run->add_option("graph", a.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  run->add_option("--alg", a.alg, "Algorithm id");
  run->add_option("--eps", a.opts.epsilon, "Privacy budget");
  run->add_option("--seed", a.opts.seed, "Random seed");
  run->add_flag("--emit-tree", a.emit_tree, "Print the tree after the CSV row");
  add_run_options(run, a.opts);
  run->callback([&] {
    const Algorithm alg = parse_algorithm(a.alg);
    const auto g = read_graph(std::filesystem::path(a.graph));
    const auto outcome = run_algorithm(g, std::filesystem::path(a.graph).stem().string(), alg, a.opts);
    std::cout << kRunCsvHeader << '\n';
    write_record(std::cout, outcome.record);
    if (outcome.released_cost) std::cout << "# released_cost=" << detail::format_double(*outcome.released_cost) << '\n';
    if (a.emit_tree) std::cout << "# tree=" << serialize_tree(outcome.tree) << '\n';
  });
}

struct CompareArgs {
  std::vector<std::string> graphs;
  int generate = 10;
  std::uint64_t graph_seed = 99;
  std::vector<std::string> algs;
  std::vector<double> eps_grid{std::begin(kDefaultEpsilonGrid), std::end(kDefaultEpsilonGrid)};
  int trials = 5;
  std::uint64_t seed = 0;
  std::string out;
  std::string svg;
  RunOptions opts;
};

void write_compare_svg(const std::string& path, const std::vector<RunRecord>& records,
                       const std::vector<Algorithm>& algs, const std::vector<double>& eps_grid) {
  const auto means = mean_by_algorithm(records);
  std::vector<std::string> categories;
  for (double e : eps_grid) categories.push_back("eps=" + detail::format_double(e));
  std::vector<svg::Series> series;
  for (Algorithm a : algs) {
    svg::Series s{std::string(algorithm_id(a)), {}};
    for (double e : eps_grid) s.values.push_back(means.at({s.name, e}) / 1000.0);
    series.push_back(std::move(s));
  }
  auto out = open_out(path);
  svg::bar_chart(out, "Mean Dasgupta cost / 1000", categories, series);
}

void add_compare(CLI::App& app, CompareArgs& a) {
  auto* cmp = app.add_subcommand("compare", "Algorithms x epsilon grid x trials x graphs");
  cmp->add_option("graphs", a.graphs, "Edge-list files (default: generated SBM graphs)")->check(CLI::ExistingFile);
  cmp->add_option("--generate", a.generate, "Number of SBM graphs to generate when no files are given");
  cmp->add_option("--graph-seed", a.graph_seed, "Seed for generated graphs");
  cmp->add_option("--algs", a.algs, "Algorithm ids")->delimiter(',');
  cmp->add_option("--eps-grid", a.eps_grid, "Epsilon values")->delimiter(',');
  cmp->add_option("--trials", a.trials, "Trials per cell");
  cmp->add_option("--seed", a.seed, "Master seed for trial streams");
  cmp->add_option("-o,--out", a.out, "Results CSV (summary goes to <out>.summary.csv)");
  cmp->add_option("--svg", a.svg, "Bar chart of mean cost per algorithm and epsilon");
  add_run_options(cmp, a.opts);
  cmp->callback([&] {
    CompareSpec spec;
    if (a.graphs.empty()) {
      for (int i = 0; i < a.generate; ++i) {
        spec.graphs.push_back({"sbm" + std::to_string(i),
                               default_sbm(derive_seed(a.graph_seed, {static_cast<std::uint64_t>(i)}))});
      }
    } else {
      for (const auto& path : a.graphs) {
        spec.graphs.push_back({std::filesystem::path(path).stem().string(), read_graph(std::filesystem::path(path))});
      }
    }
    if (!a.algs.empty()) {
      spec.algorithms.clear();
      for (const auto& id : a.algs) spec.algorithms.push_back(parse_algorithm(id));
    }
    spec.epsilons = a.eps_grid;
    spec.trials = a.trials;
    spec.seed = a.seed;
    spec.base = a.opts;
    const auto records = run_compare(spec);
    const auto cells = summarize(records);
    if (a.out.empty()) {
      write_records_csv(std::cout, records);
      std::cout << '\n';
      write_summary_csv(std::cout, cells);
    } else {
      auto out = open_out(a.out);
      write_records_csv(out, records);
      auto summary = open_out(a.out + ".summary.csv");
      write_summary_csv(summary, cells);
      std::cout << "rows=" << records.size() << " cells=" << cells.size() << '\n';
    }
    if (!a.svg.empty()) write_compare_svg(a.svg, records, spec.algorithms, spec.epsilons);
  });
}

struct BenchArgs {
  BenchSpec spec;
  std::string alg = "hc_dp";
  std::string out;
  std::string svg;
};

void add_bench(CLI::App& app, BenchArgs& a) {
  auto* bench = app.add_subcommand("bench-scaling", "Wall time against n on SBM graphs");
  bench->add_option("--sizes", a.spec.sizes, "Vertex counts")->delimiter(',')->required();
  bench->add_option("--alg", a.alg, "Algorithm id");
  bench->add_option("--eps", a.spec.epsilon, "Privacy budget");
  bench->add_option("--trials", a.spec.trials, "Trials per size");
  bench->add_option("--seed", a.spec.seed, "Master seed");
  bench->add_option("--clusters", a.spec.clusters, "Number of SBM blocks");
  bench->add_option("-o,--out", a.out, "Output CSV (default: stdout)");
  bench->add_option("--svg", a.svg, "Line chart of wall time against n");
  bench->callback([&] {
    a.spec.algorithm = parse_algorithm(a.alg);
    const auto rows = run_bench_scaling(a.spec, &std::cerr);
    if (a.out.empty()) {
      write_bench_csv(std::cout, rows);
    } else {
      auto out = open_out(a.out);
      write_bench_csv(out, rows);
    }
    if (!a.svg.empty()) {
      std::vector<double> xs;
      svg::Series s{a.alg, {}};
      for (const auto& r : rows) {
        if (xs.empty() || xs.back() != r.n) {
          xs.push_back(r.n);
          s.values.push_back(0.0);
        }
        s.values.back() = std::max(s.values.back(), r.run.wall_time_ms);
      }
      auto out = open_out(a.svg);
      svg::line_chart(out, "Wall time", xs, {s}, "n", "ms (max over trials)");
    }
  });
}

struct VerifyArgs {
  std::string suite;
  std::optional<int> n;
  std::optional<double> eps;
  std::optional<int> trials;
  std::uint64_t seed = 1;
  bool ok = true;
};

void add_verify(CLI::App& app, VerifyArgs& a) {
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print PASS/FAIL lines");
  verify->add_option("suite", a.suite, "positive, peel, sensitivity, ledger, oracle or all")
      ->required()
      ->check(CLI::IsMember({"positive", "peel", "sensitivity", "ledger", "oracle", "all"}));
  verify->add_option("--n", a.n, "Instance size");
  verify->add_option("--eps", a.eps, "Privacy budget");
  verify->add_option("--trials", a.trials, "Number of trials");
  verify->add_option("--seed", a.seed, "Random seed");
  verify->callback([&] {
    VerifyParams params;
    params.n = a.n;
    params.epsilon = a.eps;
    params.trials = a.trials;
    params.seed = a.seed;
    const auto lines = run_verify_suite(a.suite, params);
    print_verify_lines(std::cout, lines);
    a.ok = all_passed(lines);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private hierarchical clustering"};
  app.require_subcommand(1);
  GenerateArgs gen;
  RunArgs run;
  CompareArgs cmp;
  BenchArgs bench;
  VerifyArgs verify;
  add_generate(app, gen);
  add_run(app, run);
  add_compare(app, cmp);
  add_bench(app, bench);
  add_verify(app, verify);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const dphc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return verify.ok ? 0 : 1;
}
