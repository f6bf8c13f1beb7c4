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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "resilient/rng.h"

namespace resilient {

double QuantizeImportance(double v) {
  return std::nearbyint(v / kImportanceQuantum) * kImportanceQuantum;
}

GmmField::GmmField(int width, int height, std::vector<GaussianBasis> basis)
    : width_(width), height_(height), basis_(std::move(basis)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  importance_.assign(static_cast<size_t>(width) * height, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double z = 0.0;
      for (const GaussianBasis& b : basis_) {
        const double dx = x - b.mean.x;
        const double dy = y - b.mean.y;
        z += b.weight * std::exp(-(dx * dx + dy * dy) / (2 * b.sigma * b.sigma));
      }
      importance_[y * width + x] = QuantizeImportance(z);
    }
  }
}

GmmField::GmmField(int width, int height, std::vector<double> importance)
    : width_(width), height_(height), importance_(std::move(importance)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  if (importance_.size() != static_cast<size_t>(width) * height) {
    throw std::invalid_argument("importance grid size mismatch");
  }
  for (double& v : importance_) {
    if (!(v >= 0.0)) throw std::invalid_argument("negative importance");
    v = QuantizeImportance(v);
  }
}

GmmField GenerateField(int width, int height, uint64_t seed,
                       const FieldParams& params) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("field dimensions must be positive");
  }
  Rng rng(seed);
  std::uniform_int_distribution<int> count(params.min_basis, params.max_basis);
  std::uniform_real_distribution<double> mx(0.0, width - 1);
  std::uniform_real_distribution<double> my(0.0, height - 1);
  std::uniform_real_distribution<double> sigma(params.min_sigma,
                                               params.max_sigma);
  std::uniform_real_distribution<double> weight(params.min_weight,
                                                params.max_weight);
  const int n = count(rng);
  std::vector<GaussianBasis> basis;
  basis.reserve(n);
  for (int i = 0; i < n; ++i) {
    GaussianBasis b;
    b.mean.x = mx(rng);
    b.mean.y = my(rng);
    b.sigma = sigma(rng);
    b.weight = weight(rng);
    basis.push_back(b);
  }
  return GmmField(width, height, std::move(basis));
}

void WriteFieldText(const GmmField& field, std::ostream& os) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      if (x > 0) os << ' ';
      os << field.importance(x, y);
    }
    os << '\n';
  }
}

GmmField ReadFieldText(std::istream& is) {
  std::vector<double> cells;
  int width = -1;
  int height = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    int count = 0;
    double v;
    while (row >> v) {
      cells.push_back(v);
      ++count;
    }
    if (!row.eof()) {
      throw std::invalid_argument("field row " + std::to_string(height + 1) +
                                  ": malformed number");
    }
    if (width == -1) width = count;
    if (count != width) {
      throw std::invalid_argument("field row " + std::to_string(height + 1) +
                                  ": expected " + std::to_string(width) +
                                  " values, got " + std::to_string(count));
    }
    ++height;
  }
  if (height == 0) throw std::invalid_argument("empty field grid");
  return GmmField(width, height, std::move(cells));
}

std::vector<RobotPose> RandomPoses(int n, double lo, double hi, uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(lo, hi);
  std::vector<RobotPose> poses(n);
  for (int i = 0; i < n; ++i) {
    poses[i].robot_id = i;
    poses[i].position.x = coord(rng);
    poses[i].position.y = coord(rng);
  }
  return poses;
}

const char* DirectionName(Direction d) {
  switch (d) {
    case Direction::kForward:
      return "forward";
    case Direction::kBackward:
      return "backward";
    case Direction::kLeft:
      return "left";
    case Direction::kRight:
      return "right";
  }
  return "?";
}

ActionSpace BuildActions(const std::vector<RobotPose>& poses, double step,
                         double radius, int width, int height) {
  if (!(step > 0.0) || !(radius > 0.0)) {
    throw std::invalid_argument("step and radius must be positive");
  }
  constexpr Direction kDirections[] = {Direction::kForward,
                                       Direction::kBackward, Direction::kLeft,
                                       Direction::kRight};
  constexpr double kDx[] = {1, -1, 0, 0};
  constexpr double kDy[] = {0, 0, 1, -1};
  ActionSpace space;
  std::vector<std::vector<ActionId>> lists(poses.size());
  for (size_t r = 0; r < poses.size(); ++r) {
    if (poses[r].robot_id != static_cast<RobotId>(r)) {
      throw std::invalid_argument("poses must be ordered by dense robot id");
    }
    for (int d = 0; d < 4; ++d) {
      MotionAction a;
      a.id = static_cast<ActionId>(space.actions.size());
      a.owner = static_cast<RobotId>(r);
      a.direction = kDirections[d];
      a.position.x =
          std::clamp(poses[r].position.x + kDx[d] * step, 0.0, width - 1.0);
      a.position.y =
          std::clamp(poses[r].position.y + kDy[d] * step, 0.0, height - 1.0);
      a.sensing_radius = radius;
      lists[r].push_back(a.id);
      space.actions.push_back(a);
    }
  }
  space.partition = ActionPartition(std::move(lists));
  return space;
}

std::vector<int> FootprintCells(const GmmField& field,
                                const MotionAction& action) {
  const double r = action.sensing_radius;
  const Point c = action.position;
  const int x0 = std::max(0, static_cast<int>(std::ceil(c.x - r)));
  const int x1 = std::min(field.width() - 1, static_cast<int>(std::floor(c.x + r)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(c.y - r)));
  const int y1 = std::min(field.height() - 1, static_cast<int>(std::floor(c.y + r)));
  std::vector<int> cells;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x - c.x;
      const double dy = y - c.y;
      if (dx * dx + dy * dy <= r * r) cells.push_back(y * field.width() + x);
    }
  }
  return cells;
}

CoverageFunction::CoverageFunction(const GmmField& field,
                                   const std::vector<MotionAction>& actions)
    : num_cells_(field.num_cells()) {
  weight_.resize(num_cells_);
  for (int c = 0; c < num_cells_; ++c) {
    weight_[c] = std::llround(field.importance(c) / kImportanceQuantum);
  }
  footprints_.resize(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].id != static_cast<ActionId>(i)) {
      throw std::invalid_argument("actions must be indexed by id");
    }
    footprints_[i] = FootprintCells(field, actions[i]);
  }
}

double CoverageFunction::Evaluate(const ActionSet& s) const {
  // Per-thread visit stamps; a fresh generation marks every cell unvisited.
  thread_local std::vector<uint32_t> stamp;
  thread_local uint32_t generation = 0;
  if (stamp.size() < static_cast<size_t>(num_cells_)) {
    stamp.assign(num_cells_, 0);
    generation = 0;
  }
  if (++generation == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    generation = 1;
  }
  int64_t total = 0;
  for (ActionId a : s) {
    for (int cell : footprints_.at(a)) {
      if (stamp[cell] != generation) {
        stamp[cell] = generation;
        total += weight_[cell];
      }
    }
  }
  return static_cast<double>(total) * kImportanceQuantum;
}

NoisyFunction::NoisyFunction(std::shared_ptr<const SetFunction> base,
                             double noise_mean_frac, double noise_var_frac,
                             uint64_t seed)
    : base_(std::move(base)) {
  if (noise_mean_frac < 0.0 || noise_var_frac < 0.0) {
    throw std::invalid_argument("noise fractions must be non-negative");
  }
  Rng rng(seed);
  std::normal_distribution<double> standard(0.0, 1.0);
  noise_.assign(base_->ground_size(), 0.0);
  for (ActionId a = 0; a < base_->ground_size(); ++a) {
    const double reward = base_->Evaluate(ActionSet{a});
    const double z = standard(rng);
    const double eta =
        noise_mean_frac * reward + std::sqrt(noise_var_frac * reward) * z;
    noise_[a] = QuantizeImportance(std::max(0.0, eta));
  }
}

double NoisyFunction::Evaluate(const ActionSet& s) const {
  double total = base_->Evaluate(s);
  for (ActionId a : s) total += noise_[a];
  return total;
}

}  // namespace resilient
