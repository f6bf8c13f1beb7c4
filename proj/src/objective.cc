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

#include <algorithm>
#include <limits>
#include <sstream>

#include "resilient/rng.h"

namespace resilient {

ActionSet::ActionSet(std::initializer_list<ActionId> ids)
    : ActionSet(std::vector<ActionId>(ids)) {}

ActionSet::ActionSet(std::vector<ActionId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool ActionSet::Contains(ActionId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool ActionSet::Insert(ActionId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it != ids_.end() && *it == id) return false;
  ids_.insert(it, id);
  return true;
}

bool ActionSet::Erase(ActionId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return false;
  ids_.erase(it);
  return true;
}

ActionSet ActionSet::With(ActionId id) const {
  ActionSet out = *this;
  out.Insert(id);
  return out;
}

ActionSet ActionSet::Without(ActionId id) const {
  ActionSet out = *this;
  out.Erase(id);
  return out;
}

ActionSet ActionSet::Minus(const ActionSet& other) const {
  ActionSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

ActionSet ActionSet::Union(const ActionSet& other) const {
  ActionSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

bool ActionSet::IsSubsetOf(const ActionSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

std::string ToString(const ActionSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (ActionId id : s) {
    if (!first) os << ',';
    os << id;
    first = false;
  }
  os << '}';
  return os.str();
}

ActionPartition::ActionPartition(std::vector<std::vector<ActionId>> lists)
    : lists_(std::move(lists)) {
  int total = 0;
  for (const auto& l : lists_) total += static_cast<int>(l.size());
  owner_.assign(total, -1);
  for (RobotId r = 0; r < num_robots(); ++r) {
    for (ActionId a : lists_[r]) {
      if (a < 0 || a >= total) {
        throw std::invalid_argument("action id " + std::to_string(a) +
                                    " outside dense range");
      }
      if (owner_[a] != -1) {
        throw std::invalid_argument("action id " + std::to_string(a) +
                                    " assigned to two robots");
      }
      owner_[a] = r;
    }
  }
}

int ActionPartition::max_actions_per_robot() const {
  int m = 0;
  for (const auto& l : lists_) m = std::max(m, static_cast<int>(l.size()));
  return m;
}

double MarginalGain(const SetFunction& f, const ActionSet& base, ActionId v) {
  if (base.Contains(v)) {
    throw ContractViolation("marginal gain of action " + std::to_string(v) +
                            " already in base " + ToString(base));
  }
  return f.Evaluate(base.With(v)) - f.Evaluate(base);
}

double Curvature(const SetFunction& f) {
  const int n = f.ground_size();
  if (n <= 0) throw std::invalid_argument("curvature of empty ground set");
  std::vector<ActionId> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  const ActionSet ground(std::move(all));
  const double full = f.Evaluate(ground);
  double min_ratio = 1.0;
  for (ActionId v = 0; v < n; ++v) {
    const double single = f.Evaluate(ActionSet{v});
    if (single <= 0.0) continue;
    const double ratio = (full - f.Evaluate(ground.Without(v))) / single;
    min_ratio = std::min(min_ratio, ratio);
  }
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

namespace {

// Random chain X ⊆ Y ⊊ V plus an element outside Y.
struct Chain {
  ActionSet x, y;
  ActionId v;
};

Chain SampleChain(int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  const double density = unit(rng);
  std::vector<ActionId> ys, xs;
  for (ActionId a = 0; a < n; ++a) {
    if (unit(rng) < density) {
      ys.push_back(a);
      if (unit(rng) < 0.5) xs.push_back(a);
    }
  }
  Chain c{ActionSet(std::move(xs)), ActionSet(std::move(ys)), pick(rng)};
  while (c.y.size() == n) {
    const ActionId drop = pick(rng);
    c.y.Erase(drop);
    c.x.Erase(drop);
  }
  while (c.y.Contains(c.v)) c.v = pick(rng);
  return c;
}

}  // namespace

SubmodularityReport CheckSubmodular(const SetFunction& f, int trials,
                                    uint64_t seed) {
  if (trials < 1) throw ContractViolation("check_submodular needs trials >= 1");
  SubmodularityReport report;
  const int n = f.ground_size();
  if (n == 0) return report;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ++report.trials;
    Chain c = SampleChain(n, rng);
    const double gx = MarginalGain(f, c.x, c.v);
    const double gy = MarginalGain(f, c.y, c.v);
    if (gx < gy - kSubmodularTolerance) {
      report.holds = false;
      report.counterexample =
          SubmodularityViolation{std::move(c.x), std::move(c.y), c.v, gx, gy};
      return report;
    }
  }
  return report;
}

int CountMonotoneViolations(const SetFunction& f, int trials, uint64_t seed) {
  const int n = f.ground_size();
  if (n == 0) return 0;
  Rng rng(seed);
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    Chain c = SampleChain(n, rng);
    const ActionSet bigger = c.y.With(c.v);
    if (f.Evaluate(c.x) > f.Evaluate(bigger) + kSubmodularTolerance) {
      ++violations;
    }
  }
  return violations;
}

}  // namespace resilient
