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

#include "resilient/oracles.h"

#include <algorithm>
#include <string>

#include "resilient/rng.h"

namespace resilient {

namespace {

std::vector<RobotId> AllRobots(const ActionPartition& partition) {
  std::vector<RobotId> robots(partition.num_robots());
  for (RobotId r = 0; r < partition.num_robots(); ++r) robots[r] = r;
  return robots;
}

// C(n, k) saturating at `cap`.
int64_t Binomial(int n, int k, int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<int64_t>(c + 0.5L);
}

// Visits every k-subset of `items` in lexicographic index order.
template <typename Visit>
void ForEachCombination(std::span<const ActionId> items, int k, Visit visit) {
  const int n = static_cast<int>(items.size());
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<ActionId> chosen(k);
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = items[idx[i]];
    visit(std::span<const ActionId>(chosen));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double WorstCaseValue(const SetFunction& f, const ActionSet& s, int k) {
  double worst = 0.0;
  bool first = true;
  ForEachCombination(s.ids(), k, [&](std::span<const ActionId> removed) {
    ActionSet rest = s;
    for (ActionId a : removed) rest.Erase(a);
    const double v = f.Evaluate(rest);
    if (first || v < worst) {
      worst = v;
      first = false;
    }
  });
  return worst;
}

}  // namespace

std::vector<ScoredAction> StandaloneBest(const SetFunction& f,
                                         const ActionPartition& partition,
                                         std::span<const RobotId> robots) {
  std::vector<ScoredAction> best;
  best.reserve(robots.size());
  for (RobotId r : robots) {
    const BestAction b = BestOwnAction(f, ActionSet{}, partition.actions_of(r));
    best.push_back({b.action, r, b.gain});
  }
  std::sort(best.begin(), best.end(),
            [](const ScoredAction& a, const ScoredAction& b) {
              return Precedes(a, b);
            });
  return best;
}

RankedSequence PartitionGreedy(const SetFunction& f,
                               const ActionPartition& partition,
                               std::span<const RobotId> robots) {
  RankedSequence seq;
  ActionSet chosen;
  std::vector<RobotId> open(robots.begin(), robots.end());
  while (!open.empty()) {
    const double base = f.Evaluate(chosen);
    bool found = false;
    RankedEntry best;
    size_t best_slot = 0;
    for (size_t slot = 0; slot < open.size(); ++slot) {
      const RobotId r = open[slot];
      for (ActionId v : partition.actions_of(r)) {
        const double gain = f.Evaluate(chosen.With(v)) - base;
        if (!found || Precedes(gain, r, v, best.gain, best.owner, best.action)) {
          best = {v, r, gain, static_cast<int>(seq.size()) + 1};
          best_slot = slot;
          found = true;
        }
      }
    }
    if (!found) throw std::invalid_argument("robot without actions");
    seq.push_back(best);
    chosen.Insert(best.action);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(best_slot));
  }
  return seq;
}

ResilientSolution CentralizedResilient(const SetFunction& f,
                                       const ActionPartition& partition,
                                       std::span<const RobotId> robots,
                                       int max_attacks) {
  if (max_attacks < 0 || max_attacks > static_cast<int>(robots.size())) {
    throw std::invalid_argument("attack budget K must lie in [0, N]");
  }
  ResilientSolution out;
  out.removals = StandaloneBest(f, partition, robots);
  out.removals.resize(max_attacks);
  std::vector<RobotId> rest;
  for (RobotId r : robots) {
    const bool bait =
        std::any_of(out.removals.begin(), out.removals.end(),
                    [&](const ScoredAction& a) { return a.owner == r; });
    if (!bait) rest.push_back(r);
  }
  out.complements = PartitionGreedy(f, partition, rest);
  for (const ScoredAction& a : out.removals) out.actions.Insert(a.action);
  for (const RankedEntry& e : out.complements) out.actions.Insert(e.action);
  return out;
}

ResilientSolution CentralizedResilient(const SetFunction& f,
                                       const ActionPartition& partition,
                                       int max_attacks) {
  const std::vector<RobotId> robots = AllRobots(partition);
  return CentralizedResilient(f, partition, robots, max_attacks);
}

ActionSet CentralizedGreedy(const SetFunction& f,
                            const ActionPartition& partition) {
  const std::vector<RobotId> robots = AllRobots(partition);
  ActionSet out;
  for (const RankedEntry& e : PartitionGreedy(f, partition, robots)) {
    out.Insert(e.action);
  }
  return out;
}

ActionSet CentralizedRandom(const ActionPartition& partition, uint64_t seed) {
  Rng rng(seed);
  ActionSet out;
  for (RobotId r = 0; r < partition.num_robots(); ++r) {
    const auto actions = partition.actions_of(r);
    if (actions.empty()) throw std::invalid_argument("robot without actions");
    std::uniform_int_distribution<size_t> pick(0, actions.size() - 1);
    out.Insert(actions[pick(rng)]);
  }
  return out;
}

OptimalSolution BruteForceOptimal(const SetFunction& f,
                                  const ActionPartition& partition,
                                  int max_attacks, int64_t guard) {
  const int n = partition.num_robots();
  if (max_attacks < 0 || max_attacks > n) {
    throw std::invalid_argument("attack budget K must lie in [0, N]");
  }
  const int k = std::min(max_attacks, n);
  const int64_t per_profile = Binomial(n, k, guard);
  int64_t profiles = 1;
  for (RobotId r = 0; r < n; ++r) {
    const int64_t m = static_cast<int64_t>(partition.actions_of(r).size());
    if (m == 0) throw std::invalid_argument("robot without actions");
    if (profiles > guard / m) {
      profiles = guard + 1;
      break;
    }
    profiles *= m;
  }
  if (profiles > guard / std::max<int64_t>(per_profile, 1)) {
    throw SizeError("brute-force optimum needs more than " +
                    std::to_string(guard) + " evaluations");
  }

  OptimalSolution best;
  bool first = true;
  std::vector<size_t> choice(n, 0);
  while (true) {
    std::vector<ActionId> picked(n);
    for (RobotId r = 0; r < n; ++r) picked[r] = partition.actions_of(r)[choice[r]];
    const ActionSet profile(std::move(picked));
    const double value = WorstCaseValue(f, profile, k);
    if (first || value > best.value) {
      best = {profile, value};
      first = false;
    }
    int r = n - 1;
    while (r >= 0 && choice[r] + 1 == partition.actions_of(r).size()) {
      choice[r] = 0;
      --r;
    }
    if (r < 0) break;
    ++choice[r];
  }
  return best;
}

AttackResult WorstCaseAttack(const SetFunction& f, const ActionSet& solution,
                             int max_attacks, int64_t guard) {
  if (max_attacks < 0) throw std::invalid_argument("negative attack budget");
  const int k = std::min(max_attacks, solution.size());
  if (Binomial(solution.size(), k, guard) > guard) {
    throw SizeError("worst-case attack needs more than " +
                    std::to_string(guard) + " evaluations");
  }
  AttackResult best;
  bool first = true;
  ForEachCombination(solution.ids(), k, [&](std::span<const ActionId> removed) {
    ActionSet rest = solution;
    for (ActionId a : removed) rest.Erase(a);
    const double v = f.Evaluate(rest);
    if (first || v < best.surviving_value) {
      best.removed = ActionSet(std::vector<ActionId>(removed.begin(), removed.end()));
      best.surviving_value = v;
      first = false;
    }
  });
  return best;
}

AttackResult WorstCaseAttackUpTo(const SetFunction& f, const ActionSet& solution,
                                 int max_attacks, int64_t guard) {
  if (max_attacks < 0) throw std::invalid_argument("negative attack budget");
  const int k_max = std::min(max_attacks, solution.size());
  int64_t total = 0;
  for (int k = 0; k <= k_max; ++k) total += Binomial(solution.size(), k, guard);
  if (total > guard) {
    throw SizeError("exhaustive attack needs more than " +
                    std::to_string(guard) + " evaluations");
  }
  AttackResult best;
  bool first = true;
  for (int k = 0; k <= k_max; ++k) {
    ForEachCombination(solution.ids(), k, [&](std::span<const ActionId> removed) {
      ActionSet rest = solution;
      for (ActionId a : removed) rest.Erase(a);
      const double v = f.Evaluate(rest);
      if (first || v < best.surviving_value) {
        best.removed =
            ActionSet(std::vector<ActionId>(removed.begin(), removed.end()));
        best.surviving_value = v;
        first = false;
      }
    });
  }
  return best;
}

AttackResult GreedyAttack(const SetFunction& f, const ActionSet& solution,
                          int max_attacks) {
  if (max_attacks < 0) throw std::invalid_argument("negative attack budget");
  AttackResult out;
  ActionSet rest = solution;
  const int k = std::min(max_attacks, solution.size());
  for (int step = 0; step < k; ++step) {
    ActionId target = -1;
    double lowest = 0.0;
    for (ActionId a : rest) {
      const double v = f.Evaluate(rest.Without(a));
      if (target < 0 || v < lowest) {
        target = a;
        lowest = v;
      }
    }
    rest.Erase(target);
    out.removed.Insert(target);
  }
  out.surviving_value = f.Evaluate(rest);
  return out;
}

ActionSet SemiDistributedResilient(const SetFunction& f,
                                   const ActionPartition& partition,
                                   const CommGraph& graph, int max_attacks) {
  if (!graph.IsConnected()) throw std::invalid_argument("graph must be connected");
  if (graph.num_robots() != partition.num_robots()) {
    throw std::invalid_argument("graph and action partition disagree on N");
  }
  ActionSet out;
  for (const std::vector<RobotId>& group : CliquePartition(graph)) {
    const int budget = std::min<int>(max_attacks, static_cast<int>(group.size()));
    out = out.Union(CentralizedResilient(f, partition, group, budget).actions);
  }
  return out;
}

double ApproximationFloor(double curvature, int num_robots, int max_attacks) {
  double floor = std::max((1.0 - curvature) / (1.0 + curvature),
                          1.0 / (1.0 + max_attacks));
  if (num_robots > max_attacks) {
    floor = std::max(floor, 1.0 / (num_robots - max_attacks));
  }
  return floor;
}

BoundCheck VerifyBound(const SetFunction& f, const ActionPartition& partition,
                       int max_attacks, const ActionSet& solution,
                       int64_t guard) {
  BoundCheck out;
  out.lhs = WorstCaseAttack(f, solution, max_attacks, guard).surviving_value;
  out.optimal_value = BruteForceOptimal(f, partition, max_attacks, guard).value;
  out.curvature = Curvature(f);
  out.ratio_floor =
      ApproximationFloor(out.curvature, partition.num_robots(), max_attacks);
  out.rhs = out.ratio_floor * out.optimal_value;
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

}  // namespace resilient
