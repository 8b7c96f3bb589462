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

#include "semalloc/recourse.hpp"

#include <cmath>
#include <string>

namespace semalloc {

ReservationPlan ReservationPlan::zeros(std::size_t vsps, std::size_t devices) {
  return {std::vector<std::vector<int>>(vsps, std::vector<int>(devices, 0)),
          std::vector<std::vector<std::int64_t>>(
              vsps, std::vector<std::int64_t>(devices, 0))};
}

RecourseDecision RecourseDecision::zeros(std::size_t vsps, std::size_t devices,
                                         std::size_t scenarios) {
  return {std::vector<std::vector<std::vector<std::int64_t>>>(
      vsps, std::vector<std::vector<std::int64_t>>(
                devices, std::vector<std::int64_t>(scenarios, 0)))};
}

void check_plan_shape(const ReservationPlan& plan,
                      const ProblemInstance& instance) {
  const std::size_t vsps = instance.num_vsps();
  const std::size_t devices = instance.num_devices();
  if (plan.bundles.size() != vsps || plan.membership.size() != vsps) {
    throw InvalidArgumentError("plan has wrong number of VSP rows");
  }
  for (std::size_t w = 0; w < vsps; ++w) {
    if (plan.bundles[w].size() != devices ||
        plan.membership[w].size() != devices) {
      throw InvalidArgumentError("plan row " + std::to_string(w) +
                                 " has wrong number of devices");
    }
    for (std::size_t e = 0; e < devices; ++e) {
      if (plan.bundles[w][e] < 0) {
        throw InvalidArgumentError("negative bundle count at [" +
                                   std::to_string(w) + "][" +
                                   std::to_string(e) + "]");
      }
    }
  }
}

ReservationPlan normalize_membership(ReservationPlan plan) {
  for (std::size_t w = 0; w < plan.bundles.size(); ++w) {
    plan.membership[w].resize(plan.bundles[w].size());
    for (std::size_t e = 0; e < plan.bundles[w].size(); ++e) {
      plan.membership[w][e] = plan.bundles[w][e] >= 1 ? 1 : 0;
    }
  }
  return plan;
}

double reserved_coverage(std::size_t w, std::size_t scenario,
                         const ReservationPlan& plan,
                         const ProblemInstance& instance) {
  double coverage = 0.0;
  for (std::size_t e = 0; e < instance.num_devices(); ++e) {
    coverage += static_cast<double>(plan.bundles[w][e]) *
                static_cast<double>(instance.devices()[e].bundle_size) *
                instance.similarity(w, e, scenario);
  }
  return coverage;
}

std::int64_t integer_shortfall(double requirement, double coverage) {
  const double gap = requirement - coverage;
  if (gap <= kCoverageTolerance) return 0;
  return static_cast<std::int64_t>(std::ceil(gap - kCoverageTolerance));
}

std::int64_t shortfall(std::size_t w, std::size_t scenario,
                       const ReservationPlan& plan,
                       const ProblemInstance& instance) {
  return integer_shortfall(instance.requirement(w, scenario),
                           reserved_coverage(w, scenario, plan, instance));
}

std::size_t cheapest_on_demand_device(const ProblemInstance& instance) {
  if (instance.num_devices() == 0) {
    throw InvalidArgumentError("instance has no devices");
  }
  std::size_t best = 0;
  double best_cost = on_demand_unit_cost(instance.devices()[0]);
  for (std::size_t e = 1; e < instance.num_devices(); ++e) {
    const double cost = on_demand_unit_cost(instance.devices()[e]);
    if (cost < best_cost) {
      best = e;
      best_cost = cost;
    }
  }
  return best;
}

RecourseDecision optimal_recourse(const ReservationPlan& plan,
                                  const ProblemInstance& instance) {
  check_plan_shape(plan, instance);
  RecourseDecision decision = RecourseDecision::zeros(
      instance.num_vsps(), instance.num_devices(), instance.num_scenarios());
  if (instance.num_vsps() == 0) return decision;
  const std::size_t cheapest = cheapest_on_demand_device(instance);
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
      decision.on_demand[w][cheapest][i] = shortfall(w, i, plan, instance);
    }
  }
  return decision;
}

CostBreakdown price(const ReservationPlan& plan, const RecourseDecision& recourse,
                    const ProblemInstance& instance) {
  const std::size_t vsps = instance.num_vsps();
  const std::size_t devices = instance.num_devices();
  std::vector<double> bundle_cost(devices);
  std::vector<double> unit_cost(devices);
  for (std::size_t e = 0; e < devices; ++e) {
    bundle_cost[e] = reservation_bundle_cost(instance.devices()[e]);
    unit_cost[e] = on_demand_unit_cost(instance.devices()[e]);
  }

  double membership = 0.0;
  double reservation = 0.0;
  for (std::size_t w = 0; w < vsps; ++w) {
    for (std::size_t e = 0; e < devices; ++e) {
      membership += plan.membership[w][e] * instance.devices()[e].membership_cost;
      reservation += static_cast<double>(plan.bundles[w][e]) * bundle_cost[e];
    }
  }
  double expected = 0.0;
  for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
    double scenario_cost = 0.0;
    for (std::size_t w = 0; w < vsps; ++w) {
      for (std::size_t e = 0; e < devices; ++e) {
        scenario_cost +=
            static_cast<double>(recourse.on_demand[w][e][i]) * unit_cost[e];
      }
    }
    expected += instance.probability(i) * scenario_cost;
  }
  return CostBreakdown::from_parts(membership, reservation, expected);
}

Solution evaluate_total(const ReservationPlan& plan,
                        const ProblemInstance& instance) {
  check_plan_shape(plan, instance);
  Solution solution;
  solution.plan = normalize_membership(plan);
  solution.recourse = optimal_recourse(solution.plan, instance);
  solution.cost = price(solution.plan, solution.recourse, instance);
  return solution;
}

}  // namespace semalloc
