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

#ifndef RESILIENT_ENVIRONMENT_H_
#define RESILIENT_ENVIRONMENT_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "resilient/objective.h"

namespace resilient {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// One isotropic Gaussian bump: weight * exp(-|p - mean|^2 / (2 sigma^2)).
struct GaussianBasis {
  Point mean;
  double sigma = 1.0;
  double weight = 1.0;
};

struct FieldParams {
  int min_basis = 3;
  int max_basis = 6;
  double min_sigma = 10.0;
  double max_sigma = 40.0;
  double min_weight = 0.5;
  double max_weight = 1.0;
};

// Importance values are rounded to multiples of 2^-32 so that coverage sums
// are exact regardless of summation order.
inline constexpr double kImportanceQuantum = 1.0 / 4294967296.0;

// Gaussian-mixture importance map on a width x height grid. Cell (x, y) has
// its center at integer coordinates (x, y).
class GmmField {
 public:
  GmmField(int width, int height, std::vector<GaussianBasis> basis);
  // Field given directly by its cells (row-major, y-major rows).
  GmmField(int width, int height, std::vector<double> importance);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_cells() const { return width_ * height_; }
  const std::vector<GaussianBasis>& basis() const { return basis_; }
  double importance(int x, int y) const { return importance_[y * width_ + x]; }
  double importance(int cell) const { return importance_[cell]; }
  const std::vector<double>& cells() const { return importance_; }

  friend bool operator==(const GmmField& a, const GmmField& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.importance_ == b.importance_;
  }

 private:
  int width_;
  int height_;
  std::vector<GaussianBasis> basis_;
  std::vector<double> importance_;
};

double QuantizeImportance(double v);

GmmField GenerateField(int width, int height, uint64_t seed,
                       const FieldParams& params = {});

// Text grid: one row (fixed y) per line, space-separated decimal
// importances. Values are printed with round-trip precision.
void WriteFieldText(const GmmField& field, std::ostream& os);
GmmField ReadFieldText(std::istream& is);

struct RobotPose {
  RobotId robot_id = 0;
  Point position;
};

// Poses drawn uniformly in [lo, hi]^2.
std::vector<RobotPose> RandomPoses(int n, double lo, double hi, uint64_t seed);

enum class Direction { kForward, kBackward, kLeft, kRight };
const char* DirectionName(Direction d);

struct MotionAction {
  ActionId id = 0;
  RobotId owner = 0;
  Direction direction = Direction::kForward;
  Point position;
  double sensing_radius = 0.0;
};

struct ActionSpace {
  std::vector<MotionAction> actions;  // indexed by ActionId
  ActionPartition partition;
};

// Four motion primitives per robot: forward (+x), backward (-x), left (+y),
// right (-y). Resulting positions are clipped to [0, width-1] x [0, height-1].
ActionSpace BuildActions(const std::vector<RobotPose>& poses, double step,
                         double radius, int width, int height);

// Sorted indices of the cells whose centers lie within the action's disk.
std::vector<int> FootprintCells(const GmmField& field,
                                const MotionAction& action);

// f(S) = total importance of cells covered by the union of S's footprints.
class CoverageFunction : public SetFunction {
 public:
  CoverageFunction(const GmmField& field,
                   const std::vector<MotionAction>& actions);

  int ground_size() const override {
    return static_cast<int>(footprints_.size());
  }
  double Evaluate(const ActionSet& s) const override;

  const std::vector<int>& footprint(ActionId a) const {
    return footprints_.at(a);
  }

 private:
  int num_cells_;
  std::vector<int64_t> weight_;  // importance in units of kImportanceQuantum
  std::vector<std::vector<int>> footprints_;
};

// g(S) = f(S) + sum_{a in S} eta_a with eta_a ~ Normal(mean_frac * f({a}),
// var_frac * f({a})) clamped at zero. The noise term is modular, so g stays
// monotone submodular.
class NoisyFunction : public SetFunction {
 public:
  NoisyFunction(std::shared_ptr<const SetFunction> base,
                double noise_mean_frac, double noise_var_frac, uint64_t seed);

  int ground_size() const override { return base_->ground_size(); }
  double Evaluate(const ActionSet& s) const override;
  double noise(ActionId a) const { return noise_.at(a); }

 private:
  std::shared_ptr<const SetFunction> base_;
  std::vector<double> noise_;
};

}  // namespace resilient

#endif  // RESILIENT_ENVIRONMENT_H_
