// Copyright 2026 The Authors.
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

#include "resilient/objective.h"

#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "resilient/environment.h"
#include "resilient/harness.h"

namespace resilient {
namespace {

FunctionOracle Modular(std::vector<double> w) {
  const int n = static_cast<int>(w.size());
  return FunctionOracle(n, [w](const ActionSet& s) {
    double t = 0;
    for (ActionId a : s) t += w[a];
    return t;
  });
}

TEST(ActionSetTest, KeepsSortedUniqueIds) {
  ActionSet s{5, 1, 3, 1};
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(ToString(s), "{1,3,5}");
  EXPECT_FALSE(s.Insert(3));
  EXPECT_TRUE(s.Insert(2));
  EXPECT_TRUE(s.Contains(2));
  EXPECT_EQ(s.Without(1).Union(ActionSet{9}), (ActionSet{2, 3, 5, 9}));
  EXPECT_EQ(s.Minus(ActionSet{1, 5}), (ActionSet{2, 3}));
  EXPECT_TRUE((ActionSet{2, 5}).IsSubsetOf(s));
  EXPECT_FALSE((ActionSet{4}).IsSubsetOf(s));
}

TEST(ActionPartitionTest, RejectsOverlapAndGaps) {
  EXPECT_THROW(ActionPartition({{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(ActionPartition({{0}, {2}}), std::invalid_argument);
  ActionPartition p({{2, 0}, {1}});
  EXPECT_EQ(p.owner(2), 0);
  EXPECT_EQ(p.owner(1), 1);
  EXPECT_EQ(p.max_actions_per_robot(), 2);
}

TEST(MarginalGainTest, EmptyBaseIsSingletonValue) {
  auto f = Modular({1.5, 2.0});
  EXPECT_EQ(MarginalGain(f, {}, 1), f.Evaluate({1}));
}

TEST(MarginalGainTest, FullyCoveredFootprintGivesZero) {
  // Action 1's footprint is a subset of action 0's.
  GmmField field(3, 1, std::vector<double>{1.0, 2.0, 4.0});
  std::vector<MotionAction> acts(2);
  acts[0].id = 0;
  acts[0].position = {1, 0};
  acts[0].sensing_radius = 1.0;
  acts[1].id = 1;
  acts[1].position = {1, 0};
  acts[1].sensing_radius = 0.5;
  CoverageFunction f(field, acts);
  EXPECT_EQ(f.Evaluate({0}), 7.0);
  EXPECT_EQ(MarginalGain(f, {0}, 1), 0.0);
}

TEST(MarginalGainTest, MatchesTwoDirectEvaluations) {
  auto inst = RandomCoverageInstance({4, 4, 4}, 0.3, 7);
  const SetFunction& f = *inst.objective;
  for (ActionId a = 0; a < f.ground_size(); ++a) {
    for (ActionId b = 0; b < f.ground_size(); ++b) {
      if (a == b) continue;
      EXPECT_EQ(MarginalGain(f, {a}, b), f.Evaluate({a, b}) - f.Evaluate({a}));
    }
  }
}

TEST(MarginalGainTest, ElementInBaseThrows) {
  auto f = Modular({1, 2});
  EXPECT_THROW(MarginalGain(f, {0}, 0), ContractViolation);
}

TEST(CurvatureTest, ModularIsZero) {
  EXPECT_EQ(Curvature(Modular({1, 2, 3})), 0.0);
}

TEST(CurvatureTest, DuplicateActionsGiveOne) {
  FunctionOracle f(2, [](const ActionSet& s) { return s.empty() ? 0.0 : 3.0; });
  EXPECT_EQ(Curvature(f), 1.0);
}

TEST(CurvatureTest, ZeroValueElementsAreSkipped) {
  auto f = Modular({0.0, 2.0});
  EXPECT_EQ(Curvature(f), 0.0);
}

TEST(CurvatureTest, EmptyGroundSetThrows) {
  EXPECT_THROW(Curvature(Modular({})), std::invalid_argument);
}

TEST(CurvatureTest, MatchesDirectLoop) {
  auto inst = RandomCoverageInstance({4, 4}, 0.3, 11);
  const SetFunction& f = *inst.objective;
  ASSERT_EQ(f.ground_size(), 8);
  std::vector<ActionId> all(8);
  for (int i = 0; i < 8; ++i) all[i] = i;
  const ActionSet v(all);
  const double fv = f.Evaluate(v);
  double lo = 1.0;
  for (ActionId a : all) {
    const double single = f.Evaluate({a});
    if (single <= 0) continue;
    lo = std::min(lo, (fv - f.Evaluate(v.Without(a))) / single);
  }
  EXPECT_DOUBLE_EQ(Curvature(f), std::clamp(1.0 - lo, 0.0, 1.0));
  EXPECT_GE(Curvature(f), 0.0);
  EXPECT_LE(Curvature(f), 1.0);
}

TEST(CheckSubmodularTest, CoverageHolds) {
  auto inst = RandomCoverageInstance({4, 4, 4, 4, 4}, 0.3, 3);
  auto report = CheckSubmodular(*inst.objective, 1000, 5);
  EXPECT_TRUE(report.holds);
  EXPECT_EQ(report.trials, 1000);
  EXPECT_FALSE(report.counterexample.has_value());
}

TEST(CheckSubmodularTest, SquaredCardinalityFails) {
  FunctionOracle f(6, [](const ActionSet& s) {
    return static_cast<double>(s.size() * s.size());
  });
  auto report = CheckSubmodular(f, 200, 1);
  ASSERT_FALSE(report.holds);
  ASSERT_TRUE(report.counterexample.has_value());
  const auto& c = *report.counterexample;
  EXPECT_TRUE(c.smaller.IsSubsetOf(c.larger));
  EXPECT_FALSE(c.larger.Contains(c.element));
  EXPECT_LT(c.gain_smaller, c.gain_larger - kSubmodularTolerance);
  EXPECT_EQ(c.gain_smaller, MarginalGain(f, c.smaller, c.element));
}

TEST(CheckSubmodularTest, NoisyCoverageHolds) {
  auto inst = RandomCoverageInstance({4, 4, 4, 4, 4}, 0.3, 9);
  NoisyFunction g(inst.objective, 0.1, 0.05, 17);
  EXPECT_TRUE(CheckSubmodular(g, 1000, 2).holds);
  EXPECT_EQ(CountMonotoneViolations(g, 1000, 3), 0);
}

TEST(CheckSubmodularTest, ZeroTrialsThrows) {
  EXPECT_THROW(CheckSubmodular(Modular({1}), 0, 1), ContractViolation);
}

TEST(MonotoneTest, DecreasingFunctionIsCaught) {
  FunctionOracle f(4, [](const ActionSet& s) { return -1.0 * s.size(); });
  EXPECT_GT(CountMonotoneViolations(f, 100, 1), 0);
}

TEST(EvaluateTest, RepeatedCallsAreBitIdentical) {
  auto inst = RandomCoverageInstance({4, 4, 4}, 0.3, 21);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<ActionId> ids;
    for (int a = 0; a < 12; ++a) {
      if (rng() & 1) ids.push_back(a);
    }
    ActionSet s(ids);
    EXPECT_EQ(inst.objective->Evaluate(s), inst.objective->Evaluate(s));
  }
  EXPECT_EQ(inst.objective->Evaluate({}), 0.0);
}

}  // namespace
}  // namespace resilient
