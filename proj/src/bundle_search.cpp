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

#include "bundle_search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "semalloc/recourse.hpp"

namespace semalloc::internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class BundleSearch {
 public:
  BundleSearch(const SearchProblem& problem, std::int64_t node_limit,
               double epsilon)
      : problem_(problem),
        node_limit_(node_limit),
        epsilon_(epsilon),
        scenarios_(problem.requirement.size()) {
    order_devices();
    // suffix_[d][i]: coverage in scenario i if every device at search depth
    // >= d takes its upper bound.
    const std::size_t depth = order_.size();
    suffix_.assign(depth + 1, std::vector<double>(scenarios_, 0.0));
    for (std::size_t d = depth; d-- > 0;) {
      const SearchDevice& device = problem_.devices[order_[d]];
      for (std::size_t i = 0; i < scenarios_; ++i) {
        suffix_[d][i] = suffix_[d + 1][i] + static_cast<double>(device.upper) *
                                                device.units *
                                                device.similarity[i];
      }
    }
    current_.assign(problem_.devices.size(), 0);
  }

  SearchOutcome run() {
    std::vector<double> coverage(scenarios_, 0.0);
    descend(0, 0.0, coverage);
    outcome_.found = has_incumbent_;
    return outcome_;
  }

 private:
  // Cheapest expected cost per relevant transmission first; devices that
  // never match go last.
  void order_devices() {
    order_.resize(problem_.devices.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<double> key(order_.size(), kInf);
    for (std::size_t e = 0; e < order_.size(); ++e) {
      const SearchDevice& device = problem_.devices[e];
      double expected_similarity = 0.0;
      for (std::size_t i = 0; i < scenarios_; ++i) {
        expected_similarity += problem_.probability[i] * device.similarity[i];
      }
      if (expected_similarity > 0.0 && device.units > 0.0) {
        key[e] = device.bundle_cost / (device.units * expected_similarity);
      }
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  }

  // Recourse cost for a coverage vector; kInf if hard cover is violated.
  double recourse_cost(const std::vector<double>& coverage) const {
    double expected = 0.0;
    for (std::size_t i = 0; i < scenarios_; ++i) {
      const std::int64_t missing =
          integer_shortfall(problem_.requirement[i], coverage[i]);
      if (problem_.hard_cover) {
        if (missing > 0) return kInf;
        continue;
      }
      expected += problem_.probability[i] *
                  (static_cast<double>(missing) * problem_.unit_cost);
    }
    return expected;
  }

  // Full objective of current_, summed in device-index order.
  double leaf_cost() const {
    double membership = 0.0;
    double reservation = 0.0;
    std::vector<double> coverage(scenarios_, 0.0);
    for (std::size_t e = 0; e < problem_.devices.size(); ++e) {
      const SearchDevice& device = problem_.devices[e];
      const auto k = current_[e];
      if (k >= 1) membership += device.membership;
      reservation += static_cast<double>(k) * device.bundle_cost;
      for (std::size_t i = 0; i < scenarios_; ++i) {
        coverage[i] += static_cast<double>(k) * device.units * device.similarity[i];
      }
    }
    const double recourse = recourse_cost(coverage);
    if (recourse == kInf) return kInf;
    return membership + reservation + recourse;
  }

  double incumbent() const {
    return has_incumbent_ ? outcome_.cost : kInf;
  }

  void offer_leaf() {
    const double cost = leaf_cost();
    if (cost == kInf) return;
    const double best = incumbent();
    const bool better = cost < best - epsilon_;
    const bool tie_but_smaller = has_incumbent_ && !better &&
                                 cost <= best + epsilon_ &&
                                 current_ < outcome_.bundles;
    if (better || tie_but_smaller) {
      has_incumbent_ = true;
      outcome_.bundles = current_;
      outcome_.cost = cost;
    }
  }

  void descend(std::size_t depth, double first_stage,
               std::vector<double>& coverage) {
    if (outcome_.node_limit_hit) return;
    if (++outcome_.nodes > node_limit_) {
      outcome_.node_limit_hit = true;
      return;
    }
    if (depth == order_.size()) {
      offer_leaf();
      return;
    }
    const std::size_t e = order_[depth];
    const SearchDevice& device = problem_.devices[e];
    std::vector<double> child(scenarios_);
    std::vector<double> optimistic(scenarios_);
    for (std::int64_t k = 0; k <= device.upper; ++k) {
      const double stage1 = first_stage + (k >= 1 ? device.membership : 0.0) +
                            static_cast<double>(k) * device.bundle_cost;
      // First-stage cost only grows with k.
      if (stage1 > incumbent() + epsilon_) break;
      for (std::size_t i = 0; i < scenarios_; ++i) {
        child[i] = coverage[i] +
                   static_cast<double>(k) * device.units * device.similarity[i];
        optimistic[i] = child[i] + suffix_[depth + 1][i];
      }
      // Remaining devices at their bounds give the least recourse reachable
      // from this node.
      const double bound = stage1 + recourse_cost(optimistic);
      if (bound > incumbent() + epsilon_) continue;
      current_[e] = k;
      descend(depth + 1, stage1, child);
      current_[e] = 0;
      if (outcome_.node_limit_hit) return;
    }
  }

  const SearchProblem& problem_;
  const std::int64_t node_limit_;
  const double epsilon_;
  const std::size_t scenarios_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<double>> suffix_;
  std::vector<std::int64_t> current_;
  SearchOutcome outcome_;
  bool has_incumbent_ = false;
};

}  // namespace

SearchOutcome search_bundles(const SearchProblem& problem,
                             std::int64_t node_limit, double epsilon) {
  return BundleSearch(problem, node_limit, epsilon).run();
}

}  // namespace semalloc::internal
