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

#ifndef RESILIENT_PROTOCOL_H_
#define RESILIENT_PROTOCOL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "resilient/commgraph.h"
#include "resilient/objective.h"

namespace resilient {

// Raised when the distributed run reaches a state the protocol rules out
// (disagreement at termination, malformed sequences, runaway rounds).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Network-wide total order on (value, owner, action): larger value first,
// then lower owner id, then lower action id. Every comparison the protocol
// and its centralized counterparts make goes through this key, so robots
// never diverge on floating-point ties.
constexpr bool Precedes(double value_a, RobotId owner_a, ActionId action_a,
                        double value_b, RobotId owner_b, ActionId action_b) {
  if (value_a != value_b) return value_a > value_b;
  if (owner_a != owner_b) return owner_a < owner_b;
  return action_a < action_b;
}

// An action together with its standalone value f({action}).
struct ScoredAction {
  ActionId action = 0;
  RobotId owner = 0;
  double value = 0.0;
  friend bool operator==(const ScoredAction&, const ScoredAction&) = default;
};

inline bool Precedes(const ScoredAction& a, const ScoredAction& b) {
  return Precedes(a.value, a.owner, a.action, b.value, b.owner, b.action);
}

// One position of a greedy sequence: the action, the marginal gain it had
// with respect to the entries before it, and its 1-based position.
struct RankedEntry {
  ActionId action = 0;
  RobotId owner = 0;
  double gain = 0.0;
  int order = 1;
  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

inline bool Precedes(const RankedEntry& a, const RankedEntry& b) {
  if (a.gain != b.gain || a.owner != b.owner || a.action != b.action) {
    return Precedes(a.gain, a.owner, a.action, b.gain, b.owner, b.action);
  }
  return a.order < b.order;
}

using RankedSequence = std::vector<RankedEntry>;

// Orders are 1..n, keys are non-increasing, owners are distinct, and the
// length is at most `max_length`.
bool IsWellFormed(const RankedSequence& seq, int max_length);

enum class Role { kSelector, kConveyor };

struct ProtocolParams {
  int num_robots = 0;
  int max_attacks = 0;  // K
  int diameter = 0;     // d(G), known to every robot
};

struct RobotState {
  RobotId robot_id = 0;
  std::vector<ActionId> actions;  // V_i
  ProtocolParams params;

  std::vector<ScoredAction> removals;  // S1, kept sorted by Precedes
  int alpha1 = 0;
  bool phase1_done = false;

  Role role = Role::kSelector;
  RankedSequence complements;  // S2
  int alpha2 = 0;
  bool phase2_done = false;

  // Last local computation (input -> output), reused when the input repeats.
  std::optional<RankedSequence> memo_input;
  RankedSequence memo_output;
};

RobotState MakeRobotState(RobotId id, std::span<const ActionId> actions,
                          const ProtocolParams& params);

// Best own action w.r.t. `base` under the total-order key. Costs
// 1 + |actions| evaluations.
struct BestAction {
  ActionId action = 0;
  double gain = 0.0;
};
BestAction BestOwnAction(const SetFunction& f, const ActionSet& base,
                         std::span<const ActionId> actions);

// Removal phase (K-max consensus on standalone values).
void Phase1Init(RobotState& state, const SetFunction& f);
void Phase1Merge(RobotState& state,
                 std::span<const std::vector<ScoredAction>> received);
// One synchronous round over all robots. Returns true once every robot has
// reached alpha1 == 2 d(G).
bool Phase1Round(std::vector<RobotState>& states, const CommGraph& graph);

// Conveyor iff the robot owns one of the agreed removals.
void DeriveRoles(RobotState& state);

// Complement phase (distributed greedy over the selectors).
void Phase2Init(RobotState& state, const SetFunction& f);
RankedSequence Phase2Merge(const RankedSequence& mine,
                           const RankedSequence& theirs);
void Phase2Local(RobotState& state, const SetFunction& f);
// `oracles[i]` is robot i's view of the objective (lets callers count calls
// per robot). Returns true once every robot has stopped.
bool Phase2Round(std::vector<RobotState>& states, const CommGraph& graph,
                 std::span<const SetFunction* const> oracles);

// One record per robot per round; round 0 is the state right after
// initialization.
struct RoundTrace {
  int phase = 1;
  int round = 0;
  RobotId robot = 0;
  Role role = Role::kSelector;
  int alpha1 = 0;
  int alpha2 = 0;
  std::vector<ActionId> removals;
  RankedSequence complements;
};

struct RunOptions {
  std::function<void(const RoundTrace&)> trace;
};

struct DistributedResult {
  ActionSet solution;                  // S1 ∪ S2
  std::vector<ScoredAction> removals;  // S1 in key order
  RankedSequence complements;          // S2
  int diameter = 0;
  int phase1_rounds = 0;
  int phase1_agreement_round = 0;  // first round after which all S1 agree
  int phase2_rounds = 0;
  std::vector<int64_t> oracle_calls;  // per robot, both phases
  int total_rounds() const { return phase1_rounds + phase2_rounds; }
};

// Runs both phases to termination on the synchronous round simulator and
// checks network-wide agreement plus the one-action-per-robot constraint.
DistributedResult RunDistributed(const CommGraph& graph, const SetFunction& f,
                                 const ActionPartition& partition,
                                 int max_attacks, const RunOptions& options = {});

}  // namespace resilient

#endif  // RESILIENT_PROTOCOL_H_
