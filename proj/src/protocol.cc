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

#include "resilient/protocol.h"

#include <algorithm>
#include <set>
#include <string>

namespace resilient {

bool IsWellFormed(const RankedSequence& seq, int max_length) {
  if (static_cast<int>(seq.size()) > max_length) return false;
  std::set<RobotId> owners;
  for (size_t n = 0; n < seq.size(); ++n) {
    if (seq[n].order != static_cast<int>(n) + 1) return false;
    if (!owners.insert(seq[n].owner).second) return false;
    if (n > 0 && Precedes(seq[n], seq[n - 1])) return false;
  }
  return true;
}

RobotState MakeRobotState(RobotId id, std::span<const ActionId> actions,
                          const ProtocolParams& params) {
  RobotState s;
  s.robot_id = id;
  s.actions.assign(actions.begin(), actions.end());
  s.params = params;
  return s;
}

BestAction BestOwnAction(const SetFunction& f, const ActionSet& base,
                         std::span<const ActionId> actions) {
  if (actions.empty()) throw ContractViolation("robot has no actions");
  const double base_value = f.Evaluate(base);
  BestAction best{actions[0], 0.0};
  bool first = true;
  for (ActionId v : actions) {
    const double gain = f.Evaluate(base.With(v)) - base_value;
    // Owner is shared, so the key reduces to (gain desc, action asc).
    if (first || Precedes(gain, 0, v, best.gain, 0, best.action)) {
      best = {v, gain};
      first = false;
    }
  }
  return best;
}

namespace {

void SortAndTruncate(std::vector<ScoredAction>& actions, int k) {
  std::sort(actions.begin(), actions.end(),
            [](const ScoredAction& a, const ScoredAction& b) {
              return Precedes(a, b);
            });
  const size_t keep = std::min<size_t>(std::max(k, 0), actions.size());
  actions.resize(keep);
}

int StopThreshold(const ProtocolParams& p) { return 2 * p.diameter; }

void CheckSequence(const RobotState& s) {
  const int max_length = s.params.num_robots - s.params.max_attacks;
  if (!IsWellFormed(s.complements, max_length)) {
    throw ProtocolError("robot " + std::to_string(s.robot_id) +
                        " holds a malformed ranked sequence");
  }
}

}  // namespace

void Phase1Init(RobotState& state, const SetFunction& f) {
  if (!state.removals.empty()) {
    throw ContractViolation("phase 1 initialized twice");
  }
  const BestAction best = BestOwnAction(f, ActionSet{}, state.actions);
  // f(empty) = 0, so the empty-base gain is the standalone value.
  state.removals = {{best.action, state.robot_id, best.gain}};
  // |S1| <= K holds from the start, which matters when no rounds run.
  SortAndTruncate(state.removals, state.params.max_attacks);
  state.alpha1 = 0;
  state.phase1_done = StopThreshold(state.params) == 0;
}

void Phase1Merge(RobotState& state,
                 std::span<const std::vector<ScoredAction>> received) {
  std::vector<ScoredAction> merged = state.removals;
  for (const auto& set : received) {
    for (const ScoredAction& a : set) {
      const bool known =
          std::any_of(merged.begin(), merged.end(),
                      [&](const ScoredAction& m) { return m.action == a.action; });
      if (!known) merged.push_back(a);
    }
  }
  SortAndTruncate(merged, state.params.max_attacks);
  state.removals = std::move(merged);
}

bool Phase1Round(std::vector<RobotState>& states, const CommGraph& graph) {
  std::vector<std::vector<ScoredAction>> outbox(states.size());
  for (size_t i = 0; i < states.size(); ++i) outbox[i] = states[i].removals;
  bool all_done = true;
  std::vector<std::vector<ScoredAction>> inbox;
  for (RobotState& s : states) {
    if (s.phase1_done) continue;
    inbox.clear();
    for (RobotId j : graph.neighbors(s.robot_id)) inbox.push_back(outbox[j]);
    Phase1Merge(s, inbox);
    ++s.alpha1;
    if (s.alpha1 >= StopThreshold(s.params)) s.phase1_done = true;
    all_done = all_done && s.phase1_done;
  }
  return all_done;
}

void DeriveRoles(RobotState& state) {
  const bool removed = std::any_of(
      state.removals.begin(), state.removals.end(),
      [&](const ScoredAction& a) { return a.owner == state.robot_id; });
  state.role = removed ? Role::kConveyor : Role::kSelector;
}

void Phase2Init(RobotState& state, const SetFunction& f) {
  if (!state.complements.empty()) {
    throw ContractViolation("phase 2 initialized twice");
  }
  state.alpha2 = 0;
  state.phase2_done = StopThreshold(state.params) == 0;
  if (state.role == Role::kConveyor) return;
  const BestAction best = BestOwnAction(f, ActionSet{}, state.actions);
  state.complements = {{best.action, state.robot_id, best.gain, 1}};
}

RankedSequence Phase2Merge(const RankedSequence& mine,
                           const RankedSequence& theirs) {
  constexpr unsigned kMine = 1, kTheirs = 2;
  struct Tagged {
    RankedEntry entry;
    unsigned sources;
  };
  std::vector<Tagged> pool;
  pool.reserve(mine.size() + theirs.size());
  for (const RankedEntry& e : mine) pool.push_back({e, kMine});
  for (const RankedEntry& e : theirs) pool.push_back({e, kTheirs});
  std::sort(pool.begin(), pool.end(), [](const Tagged& a, const Tagged& b) {
    return Precedes(a.entry, b.entry);
  });

  // Redundant entries (same action, gain and order) collapse into one that
  // belongs to both sources.
  std::vector<Tagged> unique;
  for (const Tagged& t : pool) {
    if (!unique.empty() && unique.back().entry == t.entry) {
      unique.back().sources |= t.sources;
    } else {
      unique.push_back(t);
    }
  }

  // An entry is valid only at its recorded position. Once a source shows an
  // order-changed entry, its remaining (lower-gain) entries are discarded.
  RankedSequence merged;
  unsigned alive = kMine | kTheirs;
  std::set<RobotId> owners;
  for (const Tagged& t : unique) {
    if ((t.sources & alive) == 0) continue;
    const int next = static_cast<int>(merged.size()) + 1;
    if (t.entry.order == next && !owners.contains(t.entry.owner)) {
      merged.push_back(t.entry);
      owners.insert(t.entry.owner);
    } else {
      alive &= ~t.sources;
    }
  }
  for (size_t n = 0; n < merged.size(); ++n) {
    merged[n].order = static_cast<int>(n) + 1;
  }
  return merged;
}

void Phase2Local(RobotState& state, const SetFunction& f) {
  if (state.role != Role::kSelector) return;
  if (state.memo_input && *state.memo_input == state.complements) {
    state.complements = state.memo_output;
    return;
  }
  const RankedSequence input = state.complements;
  RankedSequence& seq = state.complements;
  const int max_length = state.params.num_robots - state.params.max_attacks;

  ActionSet prefix;
  bool placed = false;
  for (size_t n = 0; n < seq.size(); ++n) {
    const RankedEntry& incumbent = seq[n];
    if (incumbent.owner == state.robot_id) {
      placed = true;
      break;
    }
    const BestAction best = BestOwnAction(f, prefix, state.actions);
    if (Precedes(best.gain, state.robot_id, best.action, incumbent.gain,
                 incumbent.owner, incumbent.action)) {
      seq.resize(n);
      seq.push_back({best.action, state.robot_id, best.gain,
                     static_cast<int>(n) + 1});
      placed = true;
      break;
    }
    prefix.Insert(incumbent.action);
  }
  if (!placed && static_cast<int>(seq.size()) < max_length) {
    const BestAction best = BestOwnAction(f, prefix, state.actions);
    seq.push_back({best.action, state.robot_id, best.gain,
                   static_cast<int>(seq.size()) + 1});
  }
  state.memo_input = input;
  state.memo_output = seq;
}

bool Phase2Round(std::vector<RobotState>& states, const CommGraph& graph,
                 std::span<const SetFunction* const> oracles) {
  std::vector<RankedSequence> outbox(states.size());
  for (size_t i = 0; i < states.size(); ++i) outbox[i] = states[i].complements;
  bool all_done = true;
  for (RobotState& s : states) {
    if (s.phase2_done) continue;
    const RankedSequence before = s.complements;
    // neighbors() is sorted, so the fold order is ascending robot id.
    for (RobotId j : graph.neighbors(s.robot_id)) {
      s.complements = Phase2Merge(s.complements, outbox[j]);
      CheckSequence(s);
    }
    Phase2Local(s, *oracles[s.robot_id]);
    CheckSequence(s);
    if (s.complements == before) {
      ++s.alpha2;
    } else {
      s.alpha2 = 0;
    }
    if (s.alpha2 >= StopThreshold(s.params)) s.phase2_done = true;
    all_done = all_done && s.phase2_done;
  }
  return all_done;
}

namespace {

void EmitTrace(const RunOptions& options, int phase, int round,
               const std::vector<RobotState>& states) {
  if (!options.trace) return;
  for (const RobotState& s : states) {
    RoundTrace t;
    t.phase = phase;
    t.round = round;
    t.robot = s.robot_id;
    t.role = s.role;
    t.alpha1 = s.alpha1;
    t.alpha2 = s.alpha2;
    for (const ScoredAction& a : s.removals) t.removals.push_back(a.action);
    t.complements = s.complements;
    options.trace(t);
  }
}

bool RemovalsAgree(const std::vector<RobotState>& states) {
  for (const RobotState& s : states) {
    if (s.removals != states.front().removals) return false;
  }
  return true;
}

}  // namespace

DistributedResult RunDistributed(const CommGraph& graph, const SetFunction& f,
                                 const ActionPartition& partition,
                                 int max_attacks, const RunOptions& options) {
  const int n = partition.num_robots();
  if (graph.num_robots() != n) {
    throw std::invalid_argument("graph and action partition disagree on N");
  }
  if (n < 1) throw std::invalid_argument("need at least one robot");
  if (max_attacks < 0 || max_attacks > n) {
    throw std::invalid_argument("attack budget K must lie in [0, N]");
  }
  const ProtocolParams params{n, max_attacks, Diameter(graph)};

  std::vector<CountingOracle> counters;
  counters.reserve(n);
  for (int i = 0; i < n; ++i) counters.emplace_back(f);
  std::vector<const SetFunction*> views;
  for (const CountingOracle& c : counters) views.push_back(&c);

  std::vector<RobotState> states;
  states.reserve(n);
  for (RobotId i = 0; i < n; ++i) {
    states.push_back(MakeRobotState(i, partition.actions_of(i), params));
    Phase1Init(states[i], counters[i]);
  }

  DistributedResult result;
  result.diameter = params.diameter;
  result.phase1_agreement_round = RemovalsAgree(states) ? 0 : -1;
  EmitTrace(options, 1, 0, states);
  if (params.diameter > 0) {
    bool done = false;
    while (!done) {
      done = Phase1Round(states, graph);
      ++result.phase1_rounds;
      if (result.phase1_agreement_round < 0 && RemovalsAgree(states)) {
        result.phase1_agreement_round = result.phase1_rounds;
      }
      EmitTrace(options, 1, result.phase1_rounds, states);
    }
  }
  if (!RemovalsAgree(states)) {
    throw ProtocolError("robots disagree on the removal set after phase 1");
  }
  for (const RobotState& s : states) {
    std::set<RobotId> owners;
    for (const ScoredAction& a : s.removals) {
      if (!owners.insert(a.owner).second) {
        throw ProtocolError("removal set holds two actions of one robot");
      }
    }
  }

  for (RobotId i = 0; i < n; ++i) {
    DeriveRoles(states[i]);
    Phase2Init(states[i], counters[i]);
  }
  EmitTrace(options, 2, 0, states);
  if (params.diameter > 0) {
    // Far above the worst-case bound; only reachable through a protocol bug.
    const int round_cap = 4 * (n - max_attacks + 2) * params.diameter + 16;
    bool done = false;
    while (!done) {
      done = Phase2Round(states, graph, views);
      ++result.phase2_rounds;
      EmitTrace(options, 2, result.phase2_rounds, states);
      if (!done && result.phase2_rounds > round_cap) {
        throw ProtocolError("phase 2 did not terminate");
      }
    }
  }
  for (const RobotState& s : states) {
    if (s.complements != states.front().complements) {
      throw ProtocolError("robots disagree on the complement sequence");
    }
  }

  result.removals = states.front().removals;
  result.complements = states.front().complements;
  std::vector<int> per_robot(n, 0);
  for (const ScoredAction& a : result.removals) {
    result.solution.Insert(a.action);
    ++per_robot[partition.owner(a.action)];
  }
  for (const RankedEntry& e : result.complements) {
    result.solution.Insert(e.action);
    ++per_robot[partition.owner(e.action)];
  }
  for (RobotId i = 0; i < n; ++i) {
    if (per_robot[i] != 1) {
      throw ProtocolError("robot " + std::to_string(i) + " contributes " +
                          std::to_string(per_robot[i]) +
                          " actions to the final solution");
    }
  }
  result.oracle_calls.reserve(n);
  for (const CountingOracle& c : counters) result.oracle_calls.push_back(c.calls());
  return result;
}

}  // namespace resilient
