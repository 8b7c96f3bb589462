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

#include "semalloc/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "bundle_search.hpp"
#include "semalloc/parallel.hpp"

namespace semalloc {
namespace {

// Bundles needed for `requirement` at `units_per_bundle` relevant units each,
// with the same tolerance as the cover check.
std::int64_t bundles_to_cover(double requirement, double units_per_bundle) {
  if (requirement <= kCoverageTolerance || units_per_bundle <= 0.0) return 0;
  const double ratio = requirement / units_per_bundle;
  return static_cast<std::int64_t>(
      std::ceil(ratio - kCoverageTolerance / units_per_bundle));
}

std::int64_t capped_bound(std::size_t w, std::size_t e, std::int64_t bound,
                          const SolverConfig& config) {
  const auto it = config.bundle_cap_override.find({w, e});
  if (it == config.bundle_cap_override.end()) return bound;
  if (it->second < 0) {
    throw InvalidArgumentError("bundle cap override for (" + std::to_string(w) +
                               ", " + std::to_string(e) + ") is negative");
  }
  return it->second;
}

double tie_epsilon(const SolverConfig& config) {
  if (!(config.cost_tolerance >= 0.0)) {
    throw InvalidArgumentError("cost_tolerance must be >= 0");
  }
  return kCostEpsilon + config.cost_tolerance;
}

void check_config(const SolverConfig& config) {
  if (config.node_limit < 1) {
    throw InvalidArgumentError("node_limit must be >= 1");
  }
}

}  // namespace

NodeLimitError::NodeLimitError(Solution incumbent, std::int64_t node_limit)
    : Error("node limit " + std::to_string(node_limit) +
            " reached before optimality was proven"),
      incumbent_(std::move(incumbent)) {}

std::int64_t bundle_upper_bound(std::size_t w, std::size_t e,
                                const ProblemInstance& instance) {
  double max_requirement = 0.0;
  std::optional<double> min_positive;
  for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
    max_requirement = std::max(max_requirement, instance.requirement(w, i));
    const double s = instance.similarity(w, e, i);
    if (s > 0.0 && (!min_positive || s < *min_positive)) min_positive = s;
  }
  if (!min_positive) return 0;
  const double n = static_cast<double>(instance.devices()[e].bundle_size);
  return bundles_to_cover(max_requirement, n * *min_positive);
}

DipInstance dip_from_scenario(const ProblemInstance& instance,
                              std::size_t scenario) {
  if (scenario >= instance.num_scenarios()) {
    throw InvalidArgumentError("scenario index " + std::to_string(scenario) +
                               " out of range");
  }
  DipInstance dip;
  dip.devices = instance.devices();
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    std::vector<double> row(instance.num_devices());
    for (std::size_t e = 0; e < instance.num_devices(); ++e) {
      row[e] = instance.similarity(w, e, scenario);
    }
    dip.actual_similarity.push_back(std::move(row));
    const VspDemand& demand = instance.scenarios()[scenario].per_vsp[w];
    dip.actual_quantity.push_back(static_cast<double>(demand.quantity));
    dip.actual_threshold.push_back(demand.threshold);
  }
  return dip;
}

Solution solve_dip(const DipInstance& dip, const SolverConfig& config) {
  check_config(config);
  const double epsilon = tie_epsilon(config);
  const std::size_t vsps = dip.num_vsps();
  const std::size_t devices = dip.devices.size();
  if (dip.actual_similarity.size() != vsps || dip.actual_threshold.size() != vsps) {
    throw InvalidArgumentError("DIP actuals have inconsistent VSP counts");
  }
  for (const auto& device : dip.devices) {
    const auto violations = validate_device(device);
    if (!violations.empty()) {
      throw InvalidArgumentError("device " + std::to_string(device.id) + ": " +
                                 violations.front().message);
    }
  }

  ReservationPlan plan = ReservationPlan::zeros(vsps, devices);
  std::vector<std::optional<internal::SearchOutcome>> outcomes(vsps);
  parallel_for(vsps, config.threads, [&](std::size_t w) {
    if (dip.actual_similarity[w].size() != devices) {
      throw InvalidArgumentError("DIP similarity row " + std::to_string(w) +
                                 " has wrong length");
    }
    internal::SearchProblem problem;
    problem.hard_cover = true;
    problem.requirement = {dip.requirement(w)};
    problem.probability = {1.0};
    for (std::size_t e = 0; e < devices; ++e) {
      const double s = dip.actual_similarity[w][e];
      if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidArgumentError("DIP similarity out of [0,1]");
      }
      const double n = static_cast<double>(dip.devices[e].bundle_size);
      const std::int64_t bound =
          s > 0.0 ? bundles_to_cover(dip.requirement(w), n * s) : 0;
      problem.devices.push_back({dip.devices[e].membership_cost,
                                 reservation_bundle_cost(dip.devices[e]), n,
                                 {s}, capped_bound(w, e, bound, config)});
    }
    outcomes[w] = internal::search_bundles(problem, config.node_limit, epsilon);
  });

  bool limit_hit = false;
  for (std::size_t w = 0; w < vsps; ++w) {
    if (outcomes[w]->found) plan.bundles[w] = outcomes[w]->bundles;
    limit_hit = limit_hit || outcomes[w]->node_limit_hit;
  }
  if (limit_hit) {
    throw NodeLimitError(Solution{normalize_membership(plan), {}, {}},
                         config.node_limit);
  }
  for (std::size_t w = 0; w < vsps; ++w) {
    if (!outcomes[w]->found) {
      throw InfeasibleError(w, "VSP " + std::to_string(w) +
                                   " cannot be covered by reservation: "
                                   "no device has positive similarity");
    }
  }

  Solution solution;
  solution.plan = normalize_membership(std::move(plan));
  solution.recourse = RecourseDecision::zeros(vsps, devices, 1);
  double membership = 0.0;
  double reservation = 0.0;
  for (std::size_t w = 0; w < vsps; ++w) {
    for (std::size_t e = 0; e < devices; ++e) {
      membership += solution.plan.membership[w][e] * dip.devices[e].membership_cost;
      reservation += static_cast<double>(solution.plan.bundles[w][e]) *
                     reservation_bundle_cost(dip.devices[e]);
    }
  }
  solution.cost = CostBreakdown::from_parts(membership, reservation, 0.0);
  return solution;
}

Solution solve_sip(const ProblemInstance& instance, const SolverConfig& config) {
  require_valid(instance);
  check_config(config);
  const double epsilon = tie_epsilon(config);
  const std::size_t vsps = instance.num_vsps();
  const std::size_t devices = instance.num_devices();
  const std::size_t scenarios = instance.num_scenarios();
  if (devices == 0) {
    return evaluate_total(ReservationPlan::zeros(vsps, 0), instance);
  }
  const double unit_cost =
      on_demand_unit_cost(instance.devices()[cheapest_on_demand_device(instance)]);

  std::vector<internal::SearchOutcome> outcomes(vsps);
  parallel_for(vsps, config.threads, [&](std::size_t w) {
    internal::SearchProblem problem;
    problem.unit_cost = unit_cost;
    for (std::size_t i = 0; i < scenarios; ++i) {
      problem.requirement.push_back(instance.requirement(w, i));
      problem.probability.push_back(instance.probability(i));
    }
    for (std::size_t e = 0; e < devices; ++e) {
      const EdgeDevice& device = instance.devices()[e];
      internal::SearchDevice entry;
      entry.membership = device.membership_cost;
      entry.bundle_cost = reservation_bundle_cost(device);
      entry.units = static_cast<double>(device.bundle_size);
      for (std::size_t i = 0; i < scenarios; ++i) {
        entry.similarity.push_back(instance.similarity(w, e, i));
      }
      entry.upper = capped_bound(w, e, bundle_upper_bound(w, e, instance), config);
      problem.devices.push_back(std::move(entry));
    }
    outcomes[w] = internal::search_bundles(problem, config.node_limit, epsilon);
  });

  ReservationPlan plan = ReservationPlan::zeros(vsps, devices);
  bool limit_hit = false;
  for (std::size_t w = 0; w < vsps; ++w) {
    // Soft cover always admits the all-zero plan, so a VSP only lacks an
    // incumbent when the limit stopped the search before the first leaf.
    if (outcomes[w].found) plan.bundles[w] = outcomes[w].bundles;
    limit_hit = limit_hit || outcomes[w].node_limit_hit;
  }
  Solution solution = evaluate_total(plan, instance);
  if (limit_hit) throw NodeLimitError(std::move(solution), config.node_limit);
  return solution;
}

std::vector<BundleSweepPoint> sweep_first_stage(const ProblemInstance& instance,
                                                std::size_t w, std::size_t e,
                                                std::int64_t first,
                                                std::int64_t last) {
  require_valid(instance);
  if (w >= instance.num_vsps() || e >= instance.num_devices()) {
    throw InvalidArgumentError("sweep index (" + std::to_string(w) + ", " +
                               std::to_string(e) + ") out of range");
  }
  if (first < 0 || last < first) {
    throw InvalidArgumentError("sweep range must satisfy 0 <= first <= last");
  }
  std::vector<BundleSweepPoint> points;
  ReservationPlan plan = ReservationPlan::zeros(instance.num_vsps(),
                                                instance.num_devices());
  for (std::int64_t k = first; k <= last; ++k) {
    plan.bundles[w][e] = k;
    const Solution solution = evaluate_total(plan, instance);
    points.push_back({k, solution.cost.first_stage(),
                      solution.cost.expected_on_demand, solution.cost.total});
  }
  return points;
}

}  // namespace semalloc
