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

#ifndef RESILIENT_ORACLES_H_
#define RESILIENT_ORACLES_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "resilient/commgraph.h"
#include "resilient/objective.h"
#include "resilient/protocol.h"

namespace resilient {

// Brute-force searches refuse to run past this many objective evaluations.
inline constexpr int64_t kEvaluationGuard = 10'000'000;

class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every robot's best standalone action, sorted by the total-order key.
std::vector<ScoredAction> StandaloneBest(const SetFunction& f,
                                         const ActionPartition& partition,
                                         std::span<const RobotId> robots);

// Partition-constrained greedy over `robots` (one action each), starting from
// the empty set. Gains are recorded against the growing prefix.
RankedSequence PartitionGreedy(const SetFunction& f,
                               const ActionPartition& partition,
                               std::span<const RobotId> robots);

struct ResilientSolution {
  ActionSet actions;
  std::vector<ScoredAction> removals;  // top-K bait actions
  RankedSequence complements;          // greedy over the other robots
};

// Bait-then-greedy: the K robots with the largest standalone values keep
// their standalone-best action; the rest run greedy from the empty set.
ResilientSolution CentralizedResilient(const SetFunction& f,
                                       const ActionPartition& partition,
                                       int max_attacks);
ResilientSolution CentralizedResilient(const SetFunction& f,
                                       const ActionPartition& partition,
                                       std::span<const RobotId> robots,
                                       int max_attacks);

ActionSet CentralizedGreedy(const SetFunction& f,
                            const ActionPartition& partition);

// One uniformly random action per robot.
ActionSet CentralizedRandom(const ActionPartition& partition, uint64_t seed);

struct OptimalSolution {
  ActionSet actions;
  double value = 0.0;  // worst-case surviving value
};

// Exhaustive max over action profiles of the worst-case surviving value.
// Throws SizeError when the evaluation count would exceed `guard`.
OptimalSolution BruteForceOptimal(const SetFunction& f,
                                  const ActionPartition& partition,
                                  int max_attacks,
                                  int64_t guard = kEvaluationGuard);

struct AttackResult {
  ActionSet removed;
  double surviving_value = 0.0;
};

// Optimal attack. Under monotonicity removing exactly min(K, |S|) actions is
// never weaker than removing fewer, so only those subsets are enumerated.
// Ties go to the lexicographically smallest removal set.
AttackResult WorstCaseAttack(const SetFunction& f, const ActionSet& solution,
                             int max_attacks,
                             int64_t guard = kEvaluationGuard);

// Enumerates every removal set with |F| <= K. Reference route for checking
// the |F| = K shortcut above.
AttackResult WorstCaseAttackUpTo(const SetFunction& f, const ActionSet& solution,
                                 int max_attacks,
                                 int64_t guard = kEvaluationGuard);

// Removes, K times, the action whose removal lowers f the most (lowest id on
// ties).
AttackResult GreedyAttack(const SetFunction& f, const ActionSet& solution,
                          int max_attacks);

// Clique partition, then CentralizedResilient inside every group with budget
// min(K, |group|).
ActionSet SemiDistributedResilient(const SetFunction& f,
                                   const ActionPartition& partition,
                                   const CommGraph& graph, int max_attacks);

struct BoundCheck {
  double lhs = 0.0;            // worst-case surviving value of `solution`
  double rhs = 0.0;            // ratio_floor * optimal_value
  double optimal_value = 0.0;  // worst-case surviving value of the optimum
  double curvature = 0.0;
  double ratio_floor = 0.0;
  bool holds = false;
};

// max{(1-c)/(1+c), 1/(1+K), 1/(N-K)} * optimum, the 1/(N-K) term only when
// N > K.
double ApproximationFloor(double curvature, int num_robots, int max_attacks);

BoundCheck VerifyBound(const SetFunction& f, const ActionPartition& partition,
                       int max_attacks, const ActionSet& solution,
                       int64_t guard = kEvaluationGuard);

}  // namespace resilient

#endif  // RESILIENT_ORACLES_H_
