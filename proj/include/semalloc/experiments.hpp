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

// Experiment drivers behind the CLI: the probability sweep, the bundle
// sweep, the scheme comparison over on-demand price factors, and the
// semantic vs raw energy report. Each driver returns rows in grid order and
// has a matching CSV writer.

#ifndef SEMALLOC_EXPERIMENTS_HPP
#define SEMALLOC_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "semalloc/baselines.hpp"
#include "semalloc/core_model.hpp"
#include "semalloc/recourse.hpp"
#include "semalloc/solvers.hpp"

namespace semalloc {

// "a:b:step" (inclusive, snapped to 12 decimals) or "x,y,z". The result is
// non-empty and strictly ascending, else UsageError.
std::vector<double> parse_grid(std::string_view spec);

enum class PlanType { kReserved, kOnDemand, kNone };

std::string_view to_string(PlanType type);

// Reserved if the VSP holds any bundle; otherwise on-demand if it buys
// anything in any scenario; otherwise none.
PlanType classify_vsp(const Solution& solution, std::size_t w);

struct ProbabilitySweepRow {
  double probability = 0.0;  // P(first scenario)
  Solution solution;
  std::vector<PlanType> plan_types;  // per VSP
};

// Requires exactly two scenarios and a grid inside [0, 1]. Sets
// P(first) = p, P(second) = 1 - p and re-solves the stochastic problem.
std::vector<ProbabilitySweepRow> sweep_probability(const ProblemInstance& instance,
                                                   std::span<const double> grid,
                                                   const SolverConfig& config,
                                                   std::size_t threads);
void write_probability_csv(std::ostream& out,
                           const std::vector<ProbabilitySweepRow>& rows);

struct BundleSweepResult {
  std::vector<BundleSweepPoint> points;
  std::size_t argmin = 0;  // first index attaining the minimum total
  // First index where the stage-1 cost reaches the stage-2 cost.
  std::optional<std::size_t> crossing;
};

BundleSweepResult sweep_bundles(const ProblemInstance& instance, std::size_t w,
                                std::size_t e, std::int64_t max_bundles);
void write_bundle_csv(std::ostream& out, const BundleSweepResult& result);

struct CompareRow {
  double factor = 0.0;
  double sip_total = 0.0;
  double sip_on_demand = 0.0;
  double evf_total = 0.0;
  double random_mean = 0.0;
  double random_min = 0.0;
};

// Multiplies every device's alpha_on_demand by `factor`.
ProblemInstance scale_on_demand(const ProblemInstance& instance, double factor);

std::vector<CompareRow> compare_schemes(const ProblemInstance& instance,
                                        std::span<const double> factors,
                                        const RandomSchemeConfig& random,
                                        const SolverConfig& config,
                                        std::size_t threads);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

struct EnergyRow {
  int device = 0;
  double semantic_joules = 0.0;
  double raw_joules = 0.0;
  double ratio = 0.0;  // raw / semantic
};

struct EnergyReport {
  std::vector<EnergyRow> rows;
  double total_semantic_joules = 0.0;
  double total_raw_joules = 0.0;
  double overall_ratio = 0.0;
};

// Per-transmission uplink energy of the semantic and the raw payload.
// UsageError if a device has no raw payload or a zero semantic payload.
EnergyReport energy_report(const ProblemInstance& instance);
void write_energy_csv(std::ostream& out, const EnergyReport& report);

void write_similarity_csv(std::ostream& out, const ProblemInstance& instance);

}  // namespace semalloc

#endif  // SEMALLOC_EXPERIMENTS_HPP
