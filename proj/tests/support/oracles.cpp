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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace semalloc::testing {
namespace {

constexpr double kFeasibilitySlack = 1e-9;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double coverage(std::size_t w, std::size_t i, const ReservationPlan& plan,
                const ProblemInstance& instance) {
  double total = 0.0;
  for (std::size_t e = 0; e < instance.num_devices(); ++e) {
    total += static_cast<double>(plan.bundles[w][e]) *
             static_cast<double>(instance.devices()[e].bundle_size) *
             instance.similarity(w, e, i);
  }
  return total;
}

double cheapest_unit(const ProblemInstance& instance) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& device : instance.devices()) {
    best = std::min(best, oracle_unit_cost(device));
  }
  return best;
}

EdgeDevice random_device(std::mt19937_64& rng, int id, double min_ratio) {
  EdgeDevice d;
  d.id = id;
  d.uplink_rate = uniform(rng, 1.0e6, 4.0e6);
  d.transmit_power = uniform(rng, 0.07, 0.13);
  d.avg_payload_semantic = uniform(rng, 2000.0, 40000.0);
  d.avg_payload_raw = d.avg_payload_semantic * uniform(rng, 10.0, 200.0);
  d.membership_cost = uniform_int(rng, 0, 4) == 0 ? 0.0 : uniform(rng, 0.1, 3.0);
  d.bundle_size = uniform_int(rng, 5, 60);
  d.alpha_reservation = uniform(rng, 1.0, 10.0);
  d.alpha_on_demand = d.alpha_reservation * uniform(rng, min_ratio, min_ratio + 3.0);
  return d;
}

std::vector<double> random_probabilities(std::mt19937_64& rng, std::size_t count) {
  std::vector<double> weights(count);
  double sum = 0.0;
  for (auto& w : weights) {
    w = uniform(rng, 0.05, 1.0);
    sum += w;
  }
  double assigned = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    weights[i] /= sum;
    assigned += weights[i];
  }
  weights.back() = 1.0 - assigned;
  return weights;
}

double random_similarity(std::mt19937_64& rng) {
  if (uniform_int(rng, 0, 4) == 0) return 0.0;
  return std::round(uniform(rng, 0.05, 1.0) * 1000.0) / 1000.0;
}

const double kThresholds[] = {1.0, 1.0, 0.95, 0.8, 0.5};

double random_threshold(std::mt19937_64& rng) {
  return kThresholds[uniform_int(rng, 0, 4)];
}

}  // namespace

double oracle_bundle_cost(const EdgeDevice& device) {
  return static_cast<double>(device.bundle_size) * device.transmit_power *
         device.avg_payload_semantic / device.uplink_rate * device.alpha_reservation;
}

double oracle_unit_cost(const EdgeDevice& device) {
  return device.transmit_power * device.avg_payload_semantic / device.uplink_rate *
         device.alpha_on_demand;
}

double oracle_first_stage(const ReservationPlan& plan,
                          const ProblemInstance& instance) {
  double total = 0.0;
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    for (std::size_t e = 0; e < instance.num_devices(); ++e) {
      const auto& device = instance.devices()[e];
      if (plan.bundles[w][e] > 0) total += device.membership_cost;
      total += static_cast<double>(plan.bundles[w][e]) * oracle_bundle_cost(device);
    }
  }
  return total;
}

double brute_force_recourse(const ReservationPlan& plan,
                            const ProblemInstance& instance,
                            std::int64_t per_device_cap) {
  const std::size_t devices = instance.num_devices();
  double expected = 0.0;
  for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
    for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
      const double needed =
          instance.requirement(w, i) - coverage(w, i, plan, instance);
      double best = std::numeric_limits<double>::infinity();
      std::vector<std::int64_t> units(devices, 0);
      while (true) {
        double bought = 0.0;
        double cost = 0.0;
        for (std::size_t e = 0; e < devices; ++e) {
          bought += static_cast<double>(units[e]);
          cost += static_cast<double>(units[e]) * oracle_unit_cost(instance.devices()[e]);
        }
        if (bought >= needed - kFeasibilitySlack) best = std::min(best, cost);
        std::size_t e = 0;
        while (e < devices && units[e] == per_device_cap) units[e++] = 0;
        if (e == devices) break;
        ++units[e];
      }
      expected += instance.probability(i) * best;
    }
  }
  return expected;
}

double oracle_stage2(const ReservationPlan& plan, const ProblemInstance& instance) {
  const double unit = cheapest_unit(instance);
  double expected = 0.0;
  for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
    for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
      const double needed =
          instance.requirement(w, i) - coverage(w, i, plan, instance);
      const double units =
          needed <= kFeasibilitySlack ? 0.0 : std::ceil(needed - kFeasibilitySlack);
      expected += instance.probability(i) * units * unit;
    }
  }
  return expected;
}

EnumerationResult enumerate_plans(const ProblemInstance& instance,
                                  const std::vector<std::vector<std::int64_t>>& caps) {
  const std::size_t vsps = instance.num_vsps();
  const std::size_t devices = instance.num_devices();
  EnumerationResult result;
  result.best_total = std::numeric_limits<double>::infinity();
  ReservationPlan plan = ReservationPlan::zeros(vsps, devices);
  while (true) {
    for (std::size_t w = 0; w < vsps; ++w) {
      for (std::size_t e = 0; e < devices; ++e) {
        plan.membership[w][e] = plan.bundles[w][e] > 0 ? 1 : 0;
      }
    }
    const double total =
        oracle_first_stage(plan, instance) + oracle_stage2(plan, instance);
    ++result.plans;
    if (total < result.best_total) {
      result.best_total = total;
      result.best_plan = plan;
    }
    // Odometer over the flattened (w, e) grid.
    std::size_t k = 0;
    for (; k < vsps * devices; ++k) {
      auto& cell = plan.bundles[k / devices][k % devices];
      if (cell < caps[k / devices][k % devices]) {
        ++cell;
        break;
      }
      cell = 0;
    }
    if (k == vsps * devices) break;
  }
  return result;
}

std::int64_t oracle_bundle_bound(std::size_t w, std::size_t e,
                                 const ProblemInstance& instance) {
  double worst = 0.0;
  double min_positive = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
    worst = std::max(worst, instance.requirement(w, i));
    const double s = instance.similarity(w, e, i);
    if (s > 0.0) min_positive = std::min(min_positive, s);
  }
  if (std::isinf(min_positive) || worst <= 0.0) return 0;
  return static_cast<std::int64_t>(std::ceil(
      worst / (static_cast<double>(instance.devices()[e].bundle_size) * min_positive)));
}

ProblemInstance random_instance(std::mt19937_64& rng, const GeneratorLimits& limits) {
  const auto vsps = static_cast<std::size_t>(
      uniform_int(rng, 1, static_cast<std::int64_t>(limits.max_vsps)));
  const auto devices = static_cast<std::size_t>(
      uniform_int(rng, 1, static_cast<std::int64_t>(limits.max_devices)));
  const auto scenarios = static_cast<std::size_t>(
      uniform_int(rng, 1, static_cast<std::int64_t>(limits.max_scenarios)));

  std::vector<EdgeDevice> device_list;
  for (std::size_t e = 0; e < devices; ++e) {
    device_list.push_back(
        random_device(rng, static_cast<int>(e), limits.min_on_demand_ratio));
  }
  std::vector<Vsp> vsp_list;
  for (std::size_t w = 0; w < vsps; ++w) {
    vsp_list.push_back({static_cast<int>(w), "vsp" + std::to_string(w)});
  }
  SimilarityTensor tensor(vsps, devices, scenarios);
  for (std::size_t w = 0; w < vsps; ++w) {
    for (std::size_t e = 0; e < devices; ++e) {
      for (std::size_t i = 0; i < scenarios; ++i) {
        tensor.at(w, e, i) = random_similarity(rng);
      }
    }
  }
  // Largest requirement per VSP that keeps every bound within the limit.
  std::vector<double> limit(vsps, 50.0);
  for (std::size_t w = 0; w < vsps; ++w) {
    bool any = false;
    double tightest = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < devices; ++e) {
      double min_positive = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < scenarios; ++i) {
        if (tensor.at(w, e, i) > 0.0) {
          min_positive = std::min(min_positive, tensor.at(w, e, i));
        }
      }
      if (std::isinf(min_positive)) continue;
      any = true;
      tightest = std::min(tightest,
                          0.999 * static_cast<double>(limits.max_bundle_bound) *
                              static_cast<double>(device_list[e].bundle_size) *
                              min_positive);
    }
    if (any) limit[w] = tightest;
  }
  const auto probabilities = random_probabilities(rng, scenarios);
  std::vector<DemandScenario> scenario_list;
  for (std::size_t i = 0; i < scenarios; ++i) {
    DemandScenario scenario;
    scenario.probability = probabilities[i];
    for (std::size_t w = 0; w < vsps; ++w) {
      VspDemand demand;
      demand.interest_key = "interest" + std::to_string(uniform_int(rng, 0, 2));
      demand.threshold = random_threshold(rng);
      const double cap = limit[w] / demand.threshold;
      demand.quantity = uniform_int(rng, 0, 4) == 0
                            ? 0
                            : uniform_int(rng, 0, static_cast<std::int64_t>(cap));
      scenario.per_vsp.push_back(demand);
    }
    scenario_list.push_back(std::move(scenario));
  }
  return ProblemInstance(std::move(device_list), std::move(vsp_list),
                         std::move(scenario_list), std::move(tensor));
}

ReservationPlan random_plan(std::mt19937_64& rng, const ProblemInstance& instance,
                            std::int64_t max_bundles) {
  ReservationPlan plan =
      ReservationPlan::zeros(instance.num_vsps(), instance.num_devices());
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    for (std::size_t e = 0; e < instance.num_devices(); ++e) {
      plan.bundles[w][e] = uniform_int(rng, 0, max_bundles);
      plan.membership[w][e] = plan.bundles[w][e] > 0 ? 1 : 0;
    }
  }
  return plan;
}

RecourseCase random_recourse_case(std::mt19937_64& rng, std::int64_t max_shortfall) {
  GeneratorLimits limits;
  ProblemInstance base = random_instance(rng, limits);
  ReservationPlan plan = random_plan(rng, base, 4);
  std::vector<DemandScenario> scenarios = base.scenarios();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (std::size_t w = 0; w < base.num_vsps(); ++w) {
      auto& demand = scenarios[i].per_vsp[w];
      const double cov = coverage(w, i, plan, base);
      const double target =
          std::max(0.0, cov + static_cast<double>(uniform_int(rng, -5, max_shortfall)));
      demand.threshold = random_threshold(rng);
      demand.quantity = static_cast<std::int64_t>(std::floor(target / demand.threshold));
    }
  }
  ProblemInstance instance = base.with_scenarios(std::move(scenarios), base.similarity());
  return {std::move(instance), std::move(plan)};
}

std::string describe(const ReservationPlan& plan) {
  std::ostringstream out;
  out << '[';
  for (std::size_t w = 0; w < plan.bundles.size(); ++w) {
    if (w > 0) out << ' ';
    out << '(';
    for (std::size_t e = 0; e < plan.bundles[w].size(); ++e) {
      if (e > 0) out << ',';
      out << plan.bundles[w][e];
    }
    out << ')';
  }
  out << ']';
  return out.str();
}

}  // namespace semalloc::testing
