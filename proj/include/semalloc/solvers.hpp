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

// Exact first-stage optimization.
//
// Both the deterministic problem (reservation only, demand known) and the
// two-stage stochastic problem separate over VSPs: every objective term and
// every cover constraint involves a single w. Each VSP is solved on its own
// by depth-first branch-and-bound over its bundle vector, bounded per device
// by bundle_upper_bound(). The merged plan is priced by evaluate_total().

#ifndef SEMALLOC_SOLVERS_HPP
#define SEMALLOC_SOLVERS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "semalloc/core_model.hpp"
#include "semalloc/recourse.hpp"

namespace semalloc {

// Demand known exactly: per-VSP similarity, quantity and threshold.
struct DipInstance {
  std::vector<EdgeDevice> devices;
  std::vector<std::vector<double>> actual_similarity;  // [w][e]
  std::vector<double> actual_quantity;                 // [w]
  std::vector<double> actual_threshold;                // [w]

  std::size_t num_vsps() const { return actual_quantity.size(); }
  double requirement(std::size_t w) const {
    return actual_quantity[w] * actual_threshold[w];
  }
};

// Two cost values closer than this (plus SolverConfig::cost_tolerance) are
// treated as equal; ties go to the lexicographically smallest bundle vector.
inline constexpr double kCostEpsilon = 1e-9;

struct SolverConfig {
  // Replaces bundle_upper_bound() for the given (w, e).
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> bundle_cap_override;
  std::int64_t node_limit = 10'000'000;  // per VSP subproblem
  double cost_tolerance = 0.0;
  std::size_t threads = 1;
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(std::size_t vsp, const std::string& message)
      : Error(message), vsp_(vsp) {}
  const char* kind() const noexcept override { return "infeasible"; }
  std::size_t vsp() const noexcept { return vsp_; }

 private:
  std::size_t vsp_;
};

// The search hit SolverConfig::node_limit before proving optimality.
// `incumbent()` is the best plan found, priced, but not proven optimal.
class NodeLimitError : public Error {
 public:
  NodeLimitError(Solution incumbent, std::int64_t node_limit);
  const char* kind() const noexcept override { return "node_limit"; }
  const Solution& incumbent() const noexcept { return incumbent_; }

 private:
  Solution incumbent_;
};

// ceil(max_i requirement(w, i) / (n_e * min positive S[w][e][i])), or 0 when
// device e never matches VSP w or the VSP never has demand. Beyond this many
// bundles device e alone covers every scenario it can contribute to.
std::int64_t bundle_upper_bound(std::size_t w, std::size_t e,
                                const ProblemInstance& instance);

// Reservation-only optimum; the returned recourse has one all-zero scenario.
// Throws InfeasibleError naming the first VSP that cannot be covered.
Solution solve_dip(const DipInstance& dip, const SolverConfig& config = {});

// DIP for the realized demand of one scenario of `instance`.
DipInstance dip_from_scenario(const ProblemInstance& instance,
                              std::size_t scenario);

// Minimizes membership + reservation + expected on-demand cost over all
// integer plans. Throws NodeLimitError rather than returning an unproven plan.
Solution solve_sip(const ProblemInstance& instance,
                   const SolverConfig& config = {});

struct BundleSweepPoint {
  std::int64_t bundles = 0;
  double stage1 = 0.0;  // membership + reservation
  double stage2 = 0.0;  // expected on-demand
  double total = 0.0;
};

// evaluate_total() with bundles[w][e] = k for k in [first, last] and every
// other entry 0.
std::vector<BundleSweepPoint> sweep_first_stage(const ProblemInstance& instance,
                                                std::size_t w, std::size_t e,
                                                std::int64_t first,
                                                std::int64_t last);

}  // namespace semalloc

#endif  // SEMALLOC_SOLVERS_HPP
