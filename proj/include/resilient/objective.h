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

#ifndef RESILIENT_OBJECTIVE_H_
#define RESILIENT_OBJECTIVE_H_

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace resilient {

// Dense index into the ground set of all robots' candidate actions.
using ActionId = int;
using RobotId = int;

// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Sorted, duplicate-free set of action ids. The sorted representation is the
// canonical encoding used for evaluation and for cache keys.
class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(std::initializer_list<ActionId> ids);
  explicit ActionSet(std::vector<ActionId> ids);

  bool Contains(ActionId id) const;
  bool empty() const { return ids_.empty(); }
  int size() const { return static_cast<int>(ids_.size()); }

  // Returns false if `id` was already present.
  bool Insert(ActionId id);
  bool Erase(ActionId id);

  ActionSet With(ActionId id) const;
  ActionSet Without(ActionId id) const;
  ActionSet Minus(const ActionSet& other) const;
  ActionSet Union(const ActionSet& other) const;
  bool IsSubsetOf(const ActionSet& other) const;

  std::span<const ActionId> ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const ActionSet&, const ActionSet&) = default;
  friend auto operator<=>(const ActionSet&, const ActionSet&) = default;

 private:
  std::vector<ActionId> ids_;
};

std::string ToString(const ActionSet& s);

// Evaluation oracle for a monotone submodular set function over the ground set
// {0, ..., ground_size() - 1}. Implementations are immutable after
// construction and safe for concurrent Evaluate calls.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual int ground_size() const = 0;
  virtual double Evaluate(const ActionSet& s) const = 0;
};

// Adapts a callable; used mostly by tests and small hand-built instances.
class FunctionOracle : public SetFunction {
 public:
  using Fn = std::function<double(const ActionSet&)>;
  FunctionOracle(int ground_size, Fn fn)
      : ground_size_(ground_size), fn_(std::move(fn)) {}

  int ground_size() const override { return ground_size_; }
  double Evaluate(const ActionSet& s) const override { return fn_(s); }

 private:
  int ground_size_;
  Fn fn_;
};

// Forwards to another oracle and counts Evaluate calls. Not thread-safe; give
// each robot (or each measured computation) its own instance.
class CountingOracle : public SetFunction {
 public:
  explicit CountingOracle(const SetFunction& base) : base_(&base) {}

  int ground_size() const override { return base_->ground_size(); }
  double Evaluate(const ActionSet& s) const override {
    ++calls_;
    return base_->Evaluate(s);
  }

  int64_t calls() const { return calls_; }
  void Reset() { calls_ = 0; }

 private:
  const SetFunction* base_;
  mutable int64_t calls_ = 0;
};

// Assignment of ground-set actions to robots: robot i may choose from
// actions_of(i). Lists are pairwise disjoint and jointly cover 0..n-1.
class ActionPartition {
 public:
  ActionPartition() = default;
  explicit ActionPartition(std::vector<std::vector<ActionId>> lists);

  int num_robots() const { return static_cast<int>(lists_.size()); }
  int num_actions() const { return static_cast<int>(owner_.size()); }
  std::span<const ActionId> actions_of(RobotId robot) const {
    return lists_.at(robot);
  }
  RobotId owner(ActionId a) const { return owner_.at(a); }
  int max_actions_per_robot() const;
  const std::vector<std::vector<ActionId>>& lists() const { return lists_; }

 private:
  std::vector<std::vector<ActionId>> lists_;
  std::vector<RobotId> owner_;
};

// f(base + v) - f(base). Throws ContractViolation if v is already in base.
double MarginalGain(const SetFunction& f, const ActionSet& base, ActionId v);

// Total curvature 1 - min_v (f(V) - f(V - v)) / f(v), clamped to [0, 1].
// Elements with f({v}) == 0 are skipped. Throws on an empty ground set.
double Curvature(const SetFunction& f);

struct SubmodularityViolation {
  ActionSet smaller;  // X
  ActionSet larger;   // Y, with X a subset of Y
  ActionId element;   // v, not in Y
  double gain_smaller;
  double gain_larger;
};

struct SubmodularityReport {
  bool holds = true;
  int trials = 0;
  std::optional<SubmodularityViolation> counterexample;
};

inline constexpr double kSubmodularTolerance = 1e-9;

// Samples random chains X ⊆ Y ⊆ V and v ∉ Y and checks diminishing returns.
SubmodularityReport CheckSubmodular(const SetFunction& f, int trials,
                                    uint64_t seed);

// Samples random X ⊆ Y and checks f(X) <= f(Y) + tolerance. Returns the number
// of violations found.
int CountMonotoneViolations(const SetFunction& f, int trials, uint64_t seed);

}  // namespace resilient

#endif  // RESILIENT_OBJECTIVE_H_
