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

#include "resilient/environment.h"

#include <cmath>
#include <memory>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "reference_oracles.h"
#include "resilient/harness.h"

namespace resilient {
namespace {

TEST(GenerateFieldTest, SameSeedIsBitIdentical) {
  EXPECT_EQ(GenerateField(200, 200, 42), GenerateField(200, 200, 42));
  EXPECT_FALSE(GenerateField(200, 200, 42) == GenerateField(200, 200, 43));
}

TEST(GenerateFieldTest, AllCellsNonNegative) {
  for (uint64_t seed : {1u, 2u, 3u}) {
    GmmField field = GenerateField(200, 200, seed);
    ASSERT_EQ(field.num_cells(), 40000);
    for (double v : field.cells()) ASSERT_GE(v, 0.0);
  }
}

TEST(GenerateFieldTest, BasisDrawnWithinRanges) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    GmmField field = GenerateField(200, 200, seed);
    const auto& b = field.basis();
    ASSERT_GE(b.size(), 3u);
    ASSERT_LE(b.size(), 6u);
    for (const auto& g : b) {
      EXPECT_GE(g.sigma, 10.0);
      EXPECT_LE(g.sigma, 40.0);
      EXPECT_GE(g.weight, 0.5);
      EXPECT_LE(g.weight, 1.0);
      EXPECT_GE(g.mean.x, 0.0);
      EXPECT_LE(g.mean.x, 199.0);
    }
  }
}

TEST(GmmFieldTest, SingleBumpPeaksAtCenter) {
  GmmField field(201, 201, {GaussianBasis{{100, 100}, 20.0, 1.0}});
  int best = 0;
  for (int c = 0; c < field.num_cells(); ++c) {
    if (field.importance(c) > field.importance(best)) best = c;
  }
  EXPECT_EQ(best, 100 * 201 + 100);
  EXPECT_NEAR(field.importance(100, 100), 1.0, 1e-9);
  EXPECT_NEAR(field.importance(120, 100), std::exp(-0.5), 1e-9);
}

TEST(GmmFieldTest, RejectsBadGrids) {
  EXPECT_THROW(GmmField(0, 3, std::vector<GaussianBasis>{}),
               std::invalid_argument);
  EXPECT_THROW(GmmField(2, 2, std::vector<double>{1, 2, 3}),
               std::invalid_argument);
  EXPECT_THROW(GmmField(1, 1, std::vector<double>{-1}), std::invalid_argument);
}

TEST(FieldTextTest, RoundTripsExactly) {
  GmmField field = GenerateField(30, 20, 5);
  std::stringstream ss;
  WriteFieldText(field, ss);
  std::string first_line;
  std::getline(std::istringstream(ss.str()), first_line);
  std::istringstream words(first_line);
  int count = 0;
  for (std::string w; words >> w;) ++count;
  EXPECT_EQ(count, 30);
  EXPECT_EQ(ReadFieldText(ss), field);
}

TEST(FieldTextTest, RaggedRowNamesTheRow) {
  std::istringstream in("1 2 3\n4 5\n");
  try {
    ReadFieldText(in);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(RandomPosesTest, InsideRegionAndDeterministic) {
  auto poses = RandomPoses(40, 50, 100, 8);
  ASSERT_EQ(poses.size(), 40u);
  for (int i = 0; i < 40; ++i) {
    EXPECT_EQ(poses[i].robot_id, i);
    EXPECT_GE(poses[i].position.x, 50);
    EXPECT_LE(poses[i].position.y, 100);
  }
  EXPECT_EQ(poses[3].position, RandomPoses(40, 50, 100, 8)[3].position);
}

TEST(BuildActionsTest, AxisOffsets) {
  auto space = BuildActions({RobotPose{0, {75, 75}}}, 10, 10, 200, 200);
  ASSERT_EQ(space.actions.size(), 4u);
  EXPECT_EQ(space.actions[0].position, (Point{85, 75}));
  EXPECT_EQ(space.actions[1].position, (Point{65, 75}));
  EXPECT_EQ(space.actions[2].position, (Point{75, 85}));
  EXPECT_EQ(space.actions[3].position, (Point{75, 65}));
  EXPECT_EQ(space.actions[0].direction, Direction::kForward);
  EXPECT_EQ(space.actions[3].direction, Direction::kRight);
  EXPECT_EQ(space.actions[2].sensing_radius, 10.0);
}

TEST(BuildActionsTest, CornerIsClipped) {
  auto space = BuildActions({RobotPose{0, {0, 0}}}, 10, 10, 200, 200);
  EXPECT_EQ(space.actions[1].position, (Point{0, 0}));
  EXPECT_EQ(space.actions[3].position, (Point{0, 0}));
  EXPECT_EQ(space.actions[0].position, (Point{10, 0}));
  EXPECT_EQ(space.actions[2].position, (Point{0, 10}));
}

TEST(BuildActionsTest, FiveRobotsGiveTwentyOwnerPartitionedActions) {
  auto space = BuildActions(RandomPoses(5, 50, 100, 1), 10, 10, 200, 200);
  ASSERT_EQ(space.actions.size(), 20u);
  ASSERT_EQ(space.partition.num_robots(), 5);
  std::set<ActionId> seen;
  for (RobotId r = 0; r < 5; ++r) {
    const auto mine = space.partition.actions_of(r);
    ASSERT_EQ(mine.size(), 4u);
    for (int d = 0; d < 4; ++d) {
      EXPECT_EQ(mine[d], 4 * r + d);
      EXPECT_EQ(space.actions[mine[d]].owner, r);
      EXPECT_TRUE(seen.insert(mine[d]).second);
    }
  }
}

TEST(BuildActionsTest, RejectsNonPositiveStep) {
  EXPECT_THROW(BuildActions({RobotPose{0, {5, 5}}}, 0, 10, 20, 20),
               std::invalid_argument);
}

class CoverageTest : public ::testing::Test {
 protected:
  CoverageTest()
      : field_(GenerateField(200, 200, 3)),
        space_(BuildActions({RobotPose{0, {60, 60}}, RobotPose{1, {130, 130}},
                             RobotPose{2, {64, 60}}},
                            10, 10, 200, 200)),
        f_(field_, space_.actions) {}

  GmmField field_;
  ActionSpace space_;
  CoverageFunction f_;
};

TEST_F(CoverageTest, SingleDiskSumsItsCells) {
  for (ActionId a = 0; a < 12; ++a) {
    double sum = 0;
    for (int c : FootprintCells(field_, space_.actions[a])) {
      sum += field_.importance(c);
    }
    EXPECT_NEAR(f_.Evaluate({a}), sum, 1e-9);
    EXPECT_NEAR(f_.Evaluate({a}),
                testing::DirectCoverage(field_, space_.actions, {a}), 1e-9);
  }
}

TEST_F(CoverageTest, FootprintIsTheDisk) {
  // Radius-10 disk centered on a lattice point holds 317 lattice points.
  EXPECT_EQ(FootprintCells(field_, space_.actions[0]).size(), 317u);
}

TEST_F(CoverageTest, DisjointDisksAdd) {
  // Robot 0 and robot 1 are far apart.
  EXPECT_EQ(f_.Evaluate({0, 4}), f_.Evaluate({0}) + f_.Evaluate({4}));
}

TEST_F(CoverageTest, OverlapMatchesCellEnumeration) {
  // Robots 0 and 2 are 4 apart, so their forward disks overlap.
  const auto fa = FootprintCells(field_, space_.actions[0]);
  const auto fb = FootprintCells(field_, space_.actions[8]);
  double shared = 0;
  std::set<int> in_a(fa.begin(), fa.end());
  int overlap = 0;
  for (int c : fb) {
    if (in_a.count(c)) {
      shared += field_.importance(c);
      ++overlap;
    }
  }
  ASSERT_GT(overlap, 0);
  EXPECT_NEAR(f_.Evaluate({0, 8}), f_.Evaluate({0}) + f_.Evaluate({8}) - shared,
              1e-9);
  EXPECT_NEAR(f_.Evaluate({0, 8}),
              testing::DirectCoverage(field_, space_.actions, {0, 8}), 1e-9);
}

TEST_F(CoverageTest, FullGroundSetMatchesCellEnumeration) {
  std::vector<ActionId> all(12);
  for (int i = 0; i < 12; ++i) all[i] = i;
  EXPECT_NEAR(f_.Evaluate(ActionSet(all)),
              testing::DirectCoverage(field_, space_.actions, ActionSet(all)),
              1e-9);
}

TEST_F(CoverageTest, SubmodularAndMonotone) {
  EXPECT_TRUE(CheckSubmodular(f_, 1000, 1).holds);
  EXPECT_EQ(CountMonotoneViolations(f_, 1000, 2), 0);
}

TEST_F(CoverageTest, OrderIndependentSums) {
  // Integer accumulation makes sums exact: f(A ∪ B) for disjoint footprints
  // equals f(A) + f(B) without rounding noise in either order.
  EXPECT_EQ(f_.Evaluate({0, 4}) - f_.Evaluate({4}), f_.Evaluate({0}));
}

TEST(NoisyFunctionTest, ZeroNoiseIsIdentity) {
  auto inst = RandomCoverageInstance({4, 4, 4}, 0.3, 2);
  NoisyFunction g(inst.objective, 0.0, 0.0, 9);
  for (ActionId a = 0; a < 12; ++a) {
    EXPECT_EQ(g.Evaluate({a}), inst.objective->Evaluate({a}));
  }
  EXPECT_EQ(g.Evaluate({0, 5, 9}), inst.objective->Evaluate({0, 5, 9}));
}

TEST(NoisyFunctionTest, NoiseIsNonNegativeAndModular) {
  auto inst = RandomCoverageInstance({4, 4, 4, 4}, 0.3, 4);
  const SetFunction& f = *inst.objective;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    NoisyFunction g(inst.objective, 0.1, 0.05, seed);
    double eta_sum = 0;
    for (ActionId a = 0; a < 16; ++a) {
      const double eta = g.Evaluate({a}) - f.Evaluate({a});
      EXPECT_GE(eta, 0.0);
      EXPECT_EQ(eta, g.noise(a));
      if (a % 3 == 0) eta_sum += eta;
    }
    const ActionSet s{0, 3, 6, 9, 12, 15};
    EXPECT_NEAR(g.Evaluate(s), f.Evaluate(s) + eta_sum, 1e-9);
  }
}

TEST(NoisyFunctionTest, NoiseMeanTracksTenPercent) {
  auto inst = RandomCoverageInstance(std::vector<int>(50, 4), 0.3, 6);
  NoisyFunction g(inst.objective, 0.1, 0.05, 1);
  double rel = 0;
  int counted = 0;
  for (ActionId a = 0; a < 200; ++a) {
    const double base = inst.objective->Evaluate({a});
    if (base < 50) continue;
    rel += g.noise(a) / base;
    ++counted;
  }
  ASSERT_GT(counted, 50);
  EXPECT_NEAR(rel / counted, 0.1, 0.01);
}

TEST(NoisyFunctionTest, SameSeedSameNoise) {
  auto inst = RandomCoverageInstance({4, 4}, 0.3, 4);
  NoisyFunction a(inst.objective, 0.1, 0.05, 3), b(inst.objective, 0.1, 0.05, 3);
  for (ActionId x = 0; x < 8; ++x) EXPECT_EQ(a.noise(x), b.noise(x));
}

TEST(NoisyFunctionTest, SubmodularOnSampledChains) {
  auto inst = RandomCoverageInstance({4, 4, 4, 4, 4, 4}, 0.3, 12);
  NoisyFunction g(inst.objective, 0.1, 0.05, 5);
  EXPECT_TRUE(CheckSubmodular(g, 1000, 8).holds);
}

}  // namespace
}  // namespace resilient
