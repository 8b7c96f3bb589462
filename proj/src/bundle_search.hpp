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

// Single-VSP bundle search shared by the DIP and SIP solvers. Internal.

#ifndef SEMALLOC_SRC_BUNDLE_SEARCH_HPP
#define SEMALLOC_SRC_BUNDLE_SEARCH_HPP

#include <cstdint>
#include <vector>

namespace semalloc::internal {

struct SearchDevice {
  double membership = 0.0;
  double bundle_cost = 0.0;
  double units = 0.0;               // transmissions per bundle
  std::vector<double> similarity;   // per scenario
  std::int64_t upper = 0;           // inclusive bundle bound
};

// minimize  sum_e [k_e >= 1] membership_e + k_e bundle_cost_e
//           + sum_i probability_i * unit_cost * shortfall_i(k)
// over 0 <= k_e <= upper_e. With hard_cover the shortfall must be zero in
// every scenario and the recourse term vanishes.
struct SearchProblem {
  std::vector<SearchDevice> devices;
  std::vector<double> requirement;  // per scenario
  std::vector<double> probability;  // per scenario
  double unit_cost = 0.0;
  bool hard_cover = false;
};

struct SearchOutcome {
  std::vector<std::int64_t> bundles;  // device-index order
  double cost = 0.0;
  bool found = false;
  bool node_limit_hit = false;
  std::int64_t nodes = 0;
};

SearchOutcome search_bundles(const SearchProblem& problem,
                             std::int64_t node_limit, double epsilon);

}  // namespace semalloc::internal

#endif  // SEMALLOC_SRC_BUNDLE_SEARCH_HPP
