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

#ifndef RESILIENT_HARNESS_H_
#define RESILIENT_HARNESS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resilient/commgraph.h"
#include "resilient/environment.h"
#include "resilient/objective.h"
#include "resilient/protocol.h"

namespace resilient {

enum class Method {
  kDistributedResilient,
  kSemiDistributed,
  kCentralizedGreedy,
  kCentralizedRandom,
  kOptimal,
};
const char* MethodName(Method m);
std::optional<Method> ParseMethod(const std::string& name);

enum class AttackModel { kBruteForce, kGreedy };
const char* AttackModelName(AttackModel a);

// Per-group attack budget of the semi-distributed baseline.
enum class SemiBudget {
  kMinKGroup,     // min(K, |group|)
  kProportional,  // min(ceil(K * |group| / N), |group|)
};

// Malformed configuration; `what()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TrialConfig {
  int n_robots = 5;
  // Either a fixed K or a fraction range [lo, hi] of N; K is then drawn
  // uniformly in [lo * N, hi * N] and rounded to nearest (ties to even).
  std::optional<int> k_attacks = 3;
  std::optional<std::pair<double, double>> k_fraction;
  int field_width = 200;
  int field_height = 200;
  FieldParams field;
  double sensing_radius = 10.0;
  double step = 10.0;
  double pose_min = 50.0;
  double pose_max = 100.0;
  double edge_probability = 0.3;
  double noise_mean_frac = 0.0;
  double noise_var_frac = 0.0;
  std::vector<Method> methods = {
      Method::kDistributedResilient, Method::kSemiDistributed,
      Method::kCentralizedGreedy, Method::kCentralizedRandom, Method::kOptimal};
  AttackModel attack = AttackModel::kBruteForce;
  SemiBudget semi_budget = SemiBudget::kMinKGroup;
  // When false, attacks and reported values use the noise-free coverage
  // while methods still plan on the noisy objective.
  bool utility_on_noisy = true;
  uint64_t seed = 0;
};

// Throws ConfigError naming the key (or JSON parse position) on bad input.
TrialConfig ParseTrialConfig(const std::string& json_text);
TrialConfig LoadTrialConfig(const std::string& path);
std::string TrialConfigToJson(const TrialConfig& cfg);

// Two presets matching the small exhaustive study and the scaling study.
TrialConfig SmallSettingConfig();
TrialConfig ScalingSettingConfig(int n_robots);

struct MethodOutcome {
  Method method = Method::kDistributedResilient;
  std::optional<std::string> error;  // set when the method could not run
  ActionSet actions;
  double pre_value = 0.0;
  ActionSet attacked;
  double post_value = 0.0;
  std::optional<double> ratio;  // post / optimal post, brute-force attacks
  std::optional<int> rounds;
  std::optional<int64_t> oracle_calls;  // max over robots
};

struct TrialRecord {
  int trial = 0;
  uint64_t seed = 0;
  int n = 0;
  int k = 0;
  int diameter = 0;
  std::vector<MethodOutcome> outcomes;

  const MethodOutcome* Find(Method m) const;
};

// Everything a trial's methods act on, rebuilt deterministically from seed.
struct TrialInstance {
  int k = 0;
  GmmField field;
  std::vector<RobotPose> poses;
  ActionSpace space;
  CommGraph graph;
  // What the robots (and every planning method) evaluate; carries the reward
  // noise when it is configured.
  std::shared_ptr<const SetFunction> objective;
  // Noise-free coverage.
  std::shared_ptr<const SetFunction> truth;
};
TrialInstance BuildTrialInstance(const TrialConfig& cfg, uint64_t seed);

TrialRecord RunTrial(const TrialConfig& cfg, uint64_t seed, int trial_index = 0,
                     const RunOptions& protocol_options = {});

struct Quantiles {
  int count = 0;
  double mean = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};
// Linear-interpolation quartiles.
Quantiles Summarize(std::vector<double> values);

struct MethodSummary {
  Method method;
  int trials = 0;
  int errors = 0;
  Quantiles pre;
  Quantiles post;
  std::optional<Quantiles> ratio;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // in trial-index order
  std::vector<MethodSummary> summary;
};

// Trial i uses seed base_seed + i. `threads` > 1 runs trials concurrently;
// records keep trial-index order either way.
ExperimentResult RunExperiment(const TrialConfig& cfg, int n_trials,
                               uint64_t base_seed, int threads = 1);
std::vector<MethodSummary> SummarizeRecords(const TrialConfig& cfg,
                                            const std::vector<TrialRecord>& records);

inline constexpr const char* kTrialsCsvHeader =
    "trial,method,pre_value,post_value,ratio,rounds,oracle_calls,k,n,seed";
void WriteTrialsCsv(const std::vector<TrialRecord>& records, std::ostream& os);
std::string SummaryToJson(const TrialConfig& cfg, int n_trials,
                          uint64_t base_seed,
                          const std::vector<MethodSummary>& summary);
// One JSON object per line.
std::string TraceToJsonLine(const RoundTrace& t, int trial);

// Coverage instance on a generated field with robots in [50, 100]^2 where
// robot i keeps the first actions_per_robot[i] of its four motion primitives.
struct CoverageInstance {
  GmmField field;
  std::vector<MotionAction> actions;
  ActionPartition partition;
  std::shared_ptr<const CoverageFunction> objective;
  CommGraph graph;
};
CoverageInstance RandomCoverageInstance(const std::vector<int>& actions_per_robot,
                                        double edge_probability, uint64_t seed);

// Invariant sweep behind the `verify` command.
struct VerifyOptions {
  bool small = false;
  int instances = 0;  // 0 picks the default for the mode
  uint64_t seed = 1;
};
struct CheckTally {
  std::string name;
  int passed = 0;
  int failed = 0;
};
std::vector<CheckTally> RunVerification(const VerifyOptions& options);

}  // namespace resilient

#endif  // RESILIENT_HARNESS_H_
