// Copyright 2026 The semalloc Authors
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

// semalloc: solve, sweep and compare subscription plans from the shell.
//
//   semalloc solve --problem P --scheme sip|dip|evf|random [--out F]
//   semalloc sweep-probability --problem P [--grid 0:1:0.1] [--out F]
//   semalloc sweep-bundles --problem P --vsp W --device E --max K [--out F]
//   semalloc compare --problem P [--grid 0.5,1,1.5,2,3] [--seed 42]
//                    [--samples 100] [--out F]
//   semalloc energy-report --problem P [--out F]
//   semalloc similarity --problem P [--out F]
//
// SEMALLOC_THREADS caps worker threads. Output never depends on it.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "semalloc/baselines.hpp"
#include "semalloc/experiments.hpp"
#include "semalloc/format.hpp"
#include "semalloc/ingestion.hpp"
#include "semalloc/parallel.hpp"
#include "semalloc/solvers.hpp"

namespace {

using namespace semalloc;

struct Options {
  std::string problem;
  std::string scheme = "sip";
  std::string out;
  std::string grid;
  std::uint64_t seed = 42;
  std::size_t samples = 100;
  std::size_t vsp = 0;
  std::size_t device = 0;
  std::int64_t max_bundles = 20;
  std::int64_t node_limit = 10'000'000;
  bool json_errors = false;
};

// CSV/JSON goes to --out when given, otherwise to stdout.
void emit(const Options& options, const std::string& text) {
  if (options.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(options.out, text);
  }
}

void print_cost_table(std::ostream& out, const std::string& scheme,
                      const CostBreakdown& cost) {
  out << "scheme              " << scheme << '\n'
      << "membership_total    " << format_number(cost.membership_total) << '\n'
      << "reservation_total   " << format_number(cost.reservation_total) << '\n'
      << "expected_on_demand  " << format_number(cost.expected_on_demand) << '\n'
      << "total               " << format_number(cost.total) << '\n';
}

void print_plan(std::ostream& out, const Solution& solution) {
  for (std::size_t w = 0; w < solution.plan.bundles.size(); ++w) {
    out << "vsp " << w << " bundles";
    for (std::int64_t k : solution.plan.bundles[w]) out << ' ' << k;
    out << '\n';
  }
}

SolverConfig solver_config(const Options& options, std::size_t threads) {
  SolverConfig config;
  config.node_limit = options.node_limit;
  config.threads = threads;
  return config;
}

int run_solve(const Options& options) {
  const ProblemInstance instance = load_problem(options.problem);
  const std::size_t threads = thread_budget_from_env();
  const SolverConfig config = solver_config(options, threads);
  // With --out the table goes to stdout; otherwise stdout carries the JSON
  // and the table moves to stderr.
  std::ostream& table = options.out.empty() ? std::cerr : std::cout;

  if (options.scheme == "random") {
    RandomSchemeConfig random{options.seed, options.samples, threads};
    const RandomSchemeResult result = solve_random(instance, random);
    const Solution& best = result.samples[result.best_sample];
    print_cost_table(table, "random (best sample)", best.cost);
    table << "random_mean_total   " << format_number(result.mean_total) << '\n'
          << "random_min_total    " << format_number(result.min_total) << '\n'
          << "random_max_total    " << format_number(result.max_total) << '\n';
    emit(options, dump_document(random_summary_to_json(result, random)));
    return 0;
  }

  Solution solution;
  if (options.scheme == "sip") {
    solution = solve_sip(instance, config);
  } else if (options.scheme == "evf") {
    solution = solve_evf(instance, config);
  } else if (options.scheme == "dip") {
    if (instance.num_scenarios() != 1) {
      throw UsageError("dip needs a problem with exactly one (realized) scenario");
    }
    solution = evaluate_total(solve_dip(dip_from_scenario(instance, 0), config).plan,
                              instance);
  } else {
    throw UsageError("unknown scheme \"" + options.scheme + "\"");
  }
  print_cost_table(table, options.scheme, solution.cost);
  print_plan(table, solution);
  emit(options, dump_document(solution_to_json(solution, options.scheme)));
  return 0;
}

int run_sweep_probability(const Options& options) {
  const ProblemInstance instance = load_problem(options.problem);
  const auto grid = parse_grid(options.grid.empty() ? "0:1:0.1" : options.grid);
  const auto rows = sweep_probability(instance, grid, solver_config(options, 1),
                                      thread_budget_from_env());
  std::ostringstream csv;
  write_probability_csv(csv, rows);
  emit(options, csv.str());
  return 0;
}

int run_sweep_bundles(const Options& options) {
  const ProblemInstance instance = load_problem(options.problem);
  const auto result =
      sweep_bundles(instance, options.vsp, options.device, options.max_bundles);
  std::ostringstream csv;
  write_bundle_csv(csv, result);
  emit(options, csv.str());
  return 0;
}

int run_compare(const Options& options) {
  const ProblemInstance instance = load_problem(options.problem);
  const auto grid =
      parse_grid(options.grid.empty() ? "0.5,1,1.5,2,3" : options.grid);
  RandomSchemeConfig random{options.seed, options.samples, 1};
  const auto rows = compare_schemes(instance, grid, random,
                                    solver_config(options, 1),
                                    thread_budget_from_env());
  std::ostringstream csv;
  write_compare_csv(csv, rows);
  emit(options, csv.str());
  return 0;
}

int run_energy_report(const Options& options) {
  const ProblemInstance instance = load_problem(options.problem);
  std::ostringstream csv;
  write_energy_csv(csv, energy_report(instance));
  emit(options, csv.str());
  return 0;
}

int run_similarity(const Options& options) {
  const ProblemInstance instance = load_problem(options.problem);
  std::ostringstream csv;
  write_similarity_csv(csv, instance);
  emit(options, csv.str());
  return 0;
}

void report_error(const Options& options, const char* kind,
                  const std::string& message) {
  if (options.json_errors) {
    nlohmann::json error = {{"error", kind}, {"message", message}};
    std::cerr << error.dump() << '\n';
  } else {
    std::cerr << "semalloc: " << kind << " error: " << message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options options;
  CLI::App app{"Subscription provisioning for semantic-data transmissions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json-errors", options.json_errors,
               "Print errors as a JSON object on stderr");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", options.problem, "Problem JSON file")->required();
    sub->add_option("--out", options.out, "Output file (default: stdout)");
    sub->add_option("--node-limit", options.node_limit,
                    "Branch-and-bound node cap per VSP");
  };

  auto* solve = app.add_subcommand("solve", "Solve one scheme and write the solution");
  add_common(solve);
  solve->add_option("--scheme", options.scheme, "sip, dip, evf or random")
      ->check(CLI::IsMember({"sip", "dip", "evf", "random"}));
  solve->add_option("--seed", options.seed, "Random scheme seed");
  solve->add_option("--samples", options.samples, "Random scheme sample count")
      ->check(CLI::PositiveNumber);

  auto* sweep_p = app.add_subcommand("sweep-probability",
                                     "Re-solve over P(first scenario)");
  add_common(sweep_p);
  sweep_p->add_option("--grid", options.grid, "a:b:step or comma list (default 0:1:0.1)");

  auto* sweep_b = app.add_subcommand("sweep-bundles",
                                     "Cost structure over one device's bundle count");
  add_common(sweep_b);
  sweep_b->add_option("--vsp", options.vsp, "VSP index");
  sweep_b->add_option("--device", options.device, "Device index");
  sweep_b->add_option("--max", options.max_bundles, "Largest bundle count")
      ->check(CLI::NonNegativeNumber);

  auto* compare = app.add_subcommand("compare",
                                     "SIP vs EVF vs random over on-demand factors");
  add_common(compare);
  compare->add_option("--grid", options.grid,
                      "On-demand factors (default 0.5,1,1.5,2,3)");
  compare->add_option("--seed", options.seed, "Random scheme seed");
  compare->add_option("--samples", options.samples, "Random scheme sample count")
      ->check(CLI::PositiveNumber);

  auto* energy = app.add_subcommand("energy-report",
                                    "Semantic vs raw transmission energy");
  add_common(energy);

  auto* similarity = app.add_subcommand("similarity", "Print the similarity tensor");
  add_common(similarity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    if (options.json_errors) {
      report_error(options, "usage", e.what());
    } else {
      app.exit(e);
    }
    return 2;
  }

  try {
    if (*solve) return run_solve(options);
    if (*sweep_p) return run_sweep_probability(options);
    if (*sweep_b) return run_sweep_bundles(options);
    if (*compare) return run_compare(options);
    if (*energy) return run_energy_report(options);
    if (*similarity) return run_similarity(options);
  } catch (const NodeLimitError& e) {
    report_error(options, e.kind(), e.what());
    return 3;
  } catch (const UsageError& e) {
    report_error(options, e.kind(), e.what());
    return 2;
  } catch (const Error& e) {
    report_error(options, e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error(options, "internal", e.what());
    return 1;
  }
  return 0;
}
