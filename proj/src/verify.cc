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

#include <algorithm>

#include "resilient/harness.h"
#include "resilient/oracles.h"
#include "resilient/rng.h"

namespace resilient {

CoverageInstance RandomCoverageInstance(const std::vector<int>& actions_per_robot,
                                        double edge_probability, uint64_t seed) {
  const int n = static_cast<int>(actions_per_robot.size());
  GmmField field = GenerateField(200, 200, DeriveSeed(seed, 11));
  const ActionSpace full = BuildActions(RandomPoses(n, 50, 100, DeriveSeed(seed, 12)),
                                        10.0, 10.0, 200, 200);
  std::vector<MotionAction> actions;
  std::vector<std::vector<ActionId>> lists(n);
  for (RobotId r = 0; r < n; ++r) {
    const int keep = std::clamp(actions_per_robot[r], 1, 4);
    for (int d = 0; d < keep; ++d) {
      MotionAction a = full.actions[full.partition.actions_of(r)[d]];
      a.id = static_cast<ActionId>(actions.size());
      lists[r].push_back(a.id);
      actions.push_back(a);
    }
  }
  auto objective = std::make_shared<const CoverageFunction>(field, actions);
  CommGraph graph = RandomConnectedGraph(n, edge_probability, DeriveSeed(seed, 13));
  return CoverageInstance{std::move(field), std::move(actions),
                          ActionPartition(std::move(lists)), std::move(objective),
                          std::move(graph)};
}

std::vector<CheckTally> RunVerification(const VerifyOptions& options) {
  CheckTally consistency{"distributed equals centralized resilient"};
  CheckTally agreement{"phase 1 agrees within d(G) rounds"};
  CheckTally rounds{"phase 2 rounds <= 2(N-K+1)d(G)"};
  CheckTally bound{"approximation bound holds"};
  CheckTally shortcut{"|F|=K attack equals |F|<=K enumeration"};
  CheckTally greedy{"greedy attack no stronger than worst case"};

  const int instances = options.instances > 0 ? options.instances
                                              : (options.small ? 100 : 500);
  Rng rng(options.seed);
  for (int t = 0; t < instances; ++t) {
    const int n = options.small ? 1 + static_cast<int>(rng() % 5)
                                : 2 + static_cast<int>(rng() % 7);
    const int m_max = options.small ? 3 : 4;
    std::vector<int> m(n);
    for (int& c : m) c = 1 + static_cast<int>(rng() % m_max);
    const int k_max = options.small ? std::min(3, n) : n;
    const int k = static_cast<int>(rng() % (k_max + 1));
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const CoverageInstance inst = RandomCoverageInstance(m, p, rng());
    const SetFunction& f = *inst.objective;

    const DistributedResult dist = RunDistributed(inst.graph, f, inst.partition, k);
    const ResilientSolution cent = CentralizedResilient(f, inst.partition, k);
    const bool same = dist.solution == cent.actions &&
                      dist.removals == cent.removals &&
                      dist.complements == cent.complements;
    ++(same ? consistency.passed : consistency.failed);
    ++(dist.phase1_agreement_round >= 0 &&
               dist.phase1_agreement_round <= dist.diameter
           ? agreement.passed
           : agreement.failed);
    ++(dist.phase2_rounds <= 2 * (n - k + 1) * dist.diameter ? rounds.passed
                                                             : rounds.failed);

    const AttackResult worst = WorstCaseAttack(f, dist.solution, k);
    const AttackResult upto = WorstCaseAttackUpTo(f, dist.solution, k);
    ++(worst.surviving_value == upto.surviving_value ? shortcut.passed
                                                     : shortcut.failed);
    const AttackResult g = GreedyAttack(f, dist.solution, k);
    ++(g.surviving_value >= worst.surviving_value - 1e-9 ? greedy.passed
                                                         : greedy.failed);
    if (options.small) {
      ++(VerifyBound(f, inst.partition, k, dist.solution).holds ? bound.passed
                                                                : bound.failed);
    }
  }
  std::vector<CheckTally> out = {consistency, agreement, rounds, shortcut, greedy};
  if (options.small) out.push_back(bound);
  return out;
}

}  // namespace resilient
