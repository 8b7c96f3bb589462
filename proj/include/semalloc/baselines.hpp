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

// Comparison schemes: the expected-value formulation and random plans.

#ifndef SEMALLOC_BASELINES_HPP
#define SEMALLOC_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "semalloc/core_model.hpp"
#include "semalloc/recourse.hpp"
#include "semalloc/solvers.hpp"

namespace semalloc {

// DIP at the averaged demand: requirement E[quantity * threshold] (threshold
// folded into the quantity, threshold 1) and similarity E[S].
DipInstance expected_value_dip(const ProblemInstance& instance);

// Solves expected_value_dip() and prices its plan under the true scenarios.
Solution solve_evf(const ProblemInstance& instance,
                   const SolverConfig& config = {});

struct RandomSchemeConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 100;
  std::size_t threads = 1;
};

struct RandomSchemeResult {
  std::vector<Solution> samples;  // in sample-index order
  double mean_total = 0.0;
  double min_total = 0.0;
  double max_total = 0.0;
  std::size_t best_sample = 0;  // first sample attaining min_total
};

// Engine for one random sample: std::mt19937_64 seeded through std::seed_seq
// with the 32-bit words {seed lo, seed hi, sample lo, sample hi}. Both are
// fully specified by the C++ standard, so draws match across toolchains.
std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t sample);

// Uniform integer in [0, bound] by rejection on the raw 64-bit output
// (values at or above the largest multiple of bound + 1 are redrawn).
std::int64_t draw_uniform(std::mt19937_64& engine, std::int64_t bound);

// Each sample draws bundles[w][e] uniformly from [0, bundle_upper_bound(w, e)]
// in row-major (w, e) order and prices the plan with evaluate_total().
RandomSchemeResult solve_random(const ProblemInstance& instance,
                                const RandomSchemeConfig& config);

}  // namespace semalloc

#endif  // SEMALLOC_BASELINES_HPP
