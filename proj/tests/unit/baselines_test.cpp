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

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "../support/builders.hpp"
#include "../support/oracles.hpp"
#include "semalloc/baselines.hpp"

namespace semalloc {
namespace {

using testing::make_device;
using testing::single_vsp;

TEST(EvfTest, SingleScenarioEqualsDipPlanUnderRecourse) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const ProblemInstance inst = testing::random_instance(rng, {2, 3, 1, 6, 1.1});
    Solution dip;
    try {
      dip = solve_dip(dip_from_scenario(inst, 0));
    } catch (const InfeasibleError&) {
      continue;
    }
    const Solution evf = solve_evf(inst);
    ASSERT_EQ(evf.plan, dip.plan);
    ASSERT_EQ(evf, evaluate_total(dip.plan, inst));
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(EvfTest, AveragesRequirementAndSimilarity) {
  const auto inst = single_vsp({make_device(0, 100)}, {{1.0, 0.5}}, {0.5, 0.5}, {0, 200});
  const DipInstance dip = expected_value_dip(inst);
  EXPECT_DOUBLE_EQ(dip.requirement(0), 100.0);
  EXPECT_DOUBLE_EQ(dip.actual_similarity[0][0], 0.75);
}

TEST(EvfTest, EquiprobableZeroAndTwoHundred) {
  // Averaged: requirement 100 at similarity 1, so one bundle of 100. The true
  // second scenario needs 200 and gets 100 from the bundle; 100 on demand.
  const auto inst = single_vsp({make_device(0, 100)}, {{1.0, 1.0}}, {0.5, 0.5}, {0, 200});
  const Solution evf = solve_evf(inst);
  EXPECT_EQ(evf.plan.bundles[0][0], 1);
  EXPECT_EQ(evf.recourse.on_demand[0][0][0], 0);
  EXPECT_EQ(evf.recourse.on_demand[0][0][1], 100);
  // Enumeration over the plan's only free entry confirms the recourse cost.
  EXPECT_NEAR(evf.cost.expected_on_demand,
              testing::brute_force_recourse(evf.plan, inst, 120), 1e-12);
}

TEST(EvfTest, InfeasibleAverageIsReported) {
  const auto inst = single_vsp({make_device(0)}, {{0.0, 0.0}}, {0.5, 0.5}, {10, 20});
  EXPECT_THROW(solve_evf(inst), InfeasibleError);
}

TEST(DrawUniformTest, StaysInRangeAndCoversIt) {
  std::mt19937_64 engine = sample_engine(1, 0);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 7000; ++k) {
    const auto x = draw_uniform(engine, 6);
    ASSERT_GE(x, 0);
    ASSERT_LE(x, 6);
    ++hits[static_cast<std::size_t>(x)];
  }
  for (int h : hits) {
    EXPECT_GT(h, 800);
    EXPECT_LT(h, 1200);
  }
  EXPECT_EQ(draw_uniform(engine, 0), 0);
  EXPECT_THROW(draw_uniform(engine, -1), InvalidArgumentError);
}

TEST(SampleEngineTest, StreamsDependOnSeedAndSample) {
  auto a = sample_engine(42, 3);
  auto b = sample_engine(42, 3);
  auto c = sample_engine(42, 4);
  auto d = sample_engine(43, 3);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(RandomSchemeTest, ZeroBoundsGiveZeroPlans) {
  const auto inst = single_vsp({make_device(0), make_device(1)}, {{0.0}, {0.0}}, {1.0},
                               {50});
  const auto result = solve_random(inst, {7, 20, 1});
  ASSERT_EQ(result.samples.size(), 20u);
  for (const auto& s : result.samples) {
    EXPECT_EQ(s.plan.bundles[0], (std::vector<std::int64_t>{0, 0}));
  }
  EXPECT_DOUBLE_EQ(result.min_total, result.max_total);
}

TEST(RandomSchemeTest, DrawsStayWithinBounds) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const ProblemInstance inst = testing::random_instance(rng, {});
    const auto result = solve_random(inst, {static_cast<std::uint64_t>(k), 30, 1});
    for (const auto& s : result.samples) {
      for (std::size_t w = 0; w < inst.num_vsps(); ++w) {
        for (std::size_t e = 0; e < inst.num_devices(); ++e) {
          ASSERT_LE(s.plan.bundles[w][e], bundle_upper_bound(w, e, inst));
          ASSERT_GE(s.plan.bundles[w][e], 0);
        }
      }
    }
  }
}

TEST(RandomSchemeTest, DeterministicAcrossRunsAndThreads) {
  std::mt19937_64 rng(10);
  const ProblemInstance inst = testing::random_instance(rng, {});
  const auto a = solve_random(inst, {42, 100, 1});
  const auto b = solve_random(inst, {42, 100, 4});
  ASSERT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.mean_total, b.mean_total);
  EXPECT_EQ(a.best_sample, b.best_sample);
}

TEST(RandomSchemeTest, SummaryStatistics) {
  std::mt19937_64 rng(12);
  const ProblemInstance inst = testing::random_instance(rng, {});
  const auto r = solve_random(inst, {5, 50, 1});
  double sum = 0.0;
  double lo = r.samples.front().cost.total;
  double hi = lo;
  for (const auto& s : r.samples) {
    sum += s.cost.total;
    lo = std::min(lo, s.cost.total);
    hi = std::max(hi, s.cost.total);
  }
  EXPECT_NEAR(r.mean_total, sum / 50.0, 1e-12);
  EXPECT_EQ(r.min_total, lo);
  EXPECT_EQ(r.max_total, hi);
  EXPECT_EQ(r.samples[r.best_sample].cost.total, lo);
}

TEST(RandomSchemeTest, RejectsZeroSamples) {
  const auto inst = single_vsp({make_device(0)}, {{0.5}}, {1.0}, {10});
  EXPECT_THROW(solve_random(inst, {1, 0, 1}), InvalidArgumentError);
}

TEST(DominanceTest, SipBeatsEvfAndRandom) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 40; ++k) {
    const ProblemInstance inst = testing::random_instance(rng, {});
    const double sip = solve_sip(inst).cost.total;
    try {
      ASSERT_LE(sip, solve_evf(inst).cost.total + 1e-9);
    } catch (const InfeasibleError&) {
    }
    const auto r = solve_random(inst, {42, 100, 1});
    ASSERT_LE(sip, r.min_total + 1e-9);
    ASSERT_LE(sip, r.mean_total + 1e-9);
  }
}

}  // namespace
}  // namespace semalloc
