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

// Second-stage (on-demand) evaluation for a fixed reservation plan.
//
// For VSP w in scenario i the reserved coverage is
//   sum_e bundles[w][e] * n_e * S[w][e][i]
// and every on-demand unit counts in full toward the requirement
// quantity * threshold. The recourse objective is linear with non-negative
// unit prices and one cover row per (w, i), so the minimum buys the whole
// integer shortfall from the cheapest on-demand device. On-demand purchases
// need no membership.

#ifndef SEMALLOC_RECOURSE_HPP
#define SEMALLOC_RECOURSE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semalloc/core_model.hpp"

namespace semalloc {

// Coverage within this much of the requirement counts as met; absorbs
// rounding in products like 10 * 120 * 0.83.
inline constexpr double kCoverageTolerance = 1e-9;

struct ReservationPlan {
  std::vector<std::vector<int>> membership;           // [w][e], 0 or 1
  std::vector<std::vector<std::int64_t>> bundles;     // [w][e], >= 0

  static ReservationPlan zeros(std::size_t vsps, std::size_t devices);
  bool operator==(const ReservationPlan&) const = default;
};

struct RecourseDecision {
  std::vector<std::vector<std::vector<std::int64_t>>> on_demand;  // [w][e][i]

  static RecourseDecision zeros(std::size_t vsps, std::size_t devices,
                                std::size_t scenarios);
  bool operator==(const RecourseDecision&) const = default;
};

struct Solution {
  ReservationPlan plan;
  RecourseDecision recourse;
  CostBreakdown cost;

  bool operator==(const Solution&) const = default;
};

// Throws InvalidArgumentError if the plan's shape does not match the
// instance or any bundle count is negative.
void check_plan_shape(const ReservationPlan& plan,
                      const ProblemInstance& instance);

// membership[w][e] := 1 iff bundles[w][e] >= 1.
ReservationPlan normalize_membership(ReservationPlan plan);

double reserved_coverage(std::size_t w, std::size_t scenario,
                         const ReservationPlan& plan,
                         const ProblemInstance& instance);

// Smallest integer on-demand volume that satisfies VSP w's cover constraint
// in `scenario` given the reservation plan.
std::int64_t shortfall(std::size_t w, std::size_t scenario,
                       const ReservationPlan& plan,
                       const ProblemInstance& instance);

// Integer shortfall for a requirement/coverage pair. Shared with the search
// so both apply the same tolerance.
std::int64_t integer_shortfall(double requirement, double coverage);

// Device with the lowest on-demand unit price; ties go to the lowest index.
std::size_t cheapest_on_demand_device(const ProblemInstance& instance);

RecourseDecision optimal_recourse(const ReservationPlan& plan,
                                  const ProblemInstance& instance);

// Prices a plan: membership normalized, recourse from optimal_recourse,
// expected on-demand cost summed scenario by scenario in index order.
Solution evaluate_total(const ReservationPlan& plan,
                        const ProblemInstance& instance);

// Cost of a fixed plan + recourse pair, without re-optimizing the recourse.
CostBreakdown price(const ReservationPlan& plan, const RecourseDecision& recourse,
                    const ProblemInstance& instance);

}  // namespace semalloc

#endif  // SEMALLOC_RECOURSE_HPP
