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

#include "semalloc/baselines.hpp"

#include <algorithm>
#include <limits>

#include "semalloc/parallel.hpp"

namespace semalloc {

DipInstance expected_value_dip(const ProblemInstance& instance) {
  require_valid(instance);
  DipInstance dip;
  dip.devices = instance.devices();
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    double requirement = 0.0;
    for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
      requirement += instance.probability(i) * instance.requirement(w, i);
    }
    std::vector<double> row(instance.num_devices(), 0.0);
    for (std::size_t e = 0; e < instance.num_devices(); ++e) {
      for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
        row[e] += instance.probability(i) * instance.similarity(w, e, i);
      }
      row[e] = std::clamp(row[e], 0.0, 1.0);
    }
    dip.actual_similarity.push_back(std::move(row));
    dip.actual_quantity.push_back(requirement);
    dip.actual_threshold.push_back(1.0);
  }
  return dip;
}

Solution solve_evf(const ProblemInstance& instance, const SolverConfig& config) {
  const Solution averaged = solve_dip(expected_value_dip(instance), config);
  return evaluate_total(averaged.plan, instance);
}

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t sample) {
  std::seed_seq sequence{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
  return std::mt19937_64(sequence);
}

std::int64_t draw_uniform(std::mt19937_64& engine, std::int64_t bound) {
  if (bound < 0) throw InvalidArgumentError("draw bound must be >= 0");
  if (bound == 0) return 0;
  const std::uint64_t range = static_cast<std::uint64_t>(bound) + 1;
  // Largest multiple of range representable in 64 bits; 2^64 mod range
  // computed as (2^64 - range) mod range.
  const std::uint64_t reject_from =
      std::numeric_limits<std::uint64_t>::max() - (-range % range);
  std::uint64_t x = engine();
  while (x > reject_from) x = engine();
  return static_cast<std::int64_t>(x % range);
}

RandomSchemeResult solve_random(const ProblemInstance& instance,
                                const RandomSchemeConfig& config) {
  require_valid(instance);
  if (config.samples < 1) throw InvalidArgumentError("samples must be >= 1");
  const std::size_t vsps = instance.num_vsps();
  const std::size_t devices = instance.num_devices();
  std::vector<std::vector<std::int64_t>> bounds(vsps,
                                                std::vector<std::int64_t>(devices));
  for (std::size_t w = 0; w < vsps; ++w) {
    for (std::size_t e = 0; e < devices; ++e) {
      bounds[w][e] = bundle_upper_bound(w, e, instance);
    }
  }

  RandomSchemeResult result;
  result.samples.resize(config.samples);
  parallel_for(config.samples, config.threads, [&](std::size_t k) {
    std::mt19937_64 engine = sample_engine(config.seed, k);
    ReservationPlan plan = ReservationPlan::zeros(vsps, devices);
    for (std::size_t w = 0; w < vsps; ++w) {
      for (std::size_t e = 0; e < devices; ++e) {
        plan.bundles[w][e] = draw_uniform(engine, bounds[w][e]);
      }
    }
    result.samples[k] = evaluate_total(plan, instance);
  });

  double sum = 0.0;
  result.min_total = std::numeric_limits<double>::infinity();
  result.max_total = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    const double total = result.samples[k].cost.total;
    sum += total;
    if (total < result.min_total) {
      result.min_total = total;
      result.best_sample = k;
    }
    result.max_total = std::max(result.max_total, total);
  }
  result.mean_total = sum / static_cast<double>(result.samples.size());
  return result;
}

}  // namespace semalloc
