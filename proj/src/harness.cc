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

#include "resilient/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "resilient/oracles.h"
#include "resilient/rng.h"

namespace resilient {

using nlohmann::json;

namespace {

constexpr Method kAllMethods[] = {
    Method::kDistributedResilient, Method::kSemiDistributed,
    Method::kCentralizedGreedy, Method::kCentralizedRandom, Method::kOptimal};

// Sub-stream ids for DeriveSeed.
enum Stream : uint64_t {
  kFieldStream = 1,
  kPoseStream = 2,
  kGraphStream = 3,
  kNoiseStream = 4,
  kRandomMethodStream = 5,
  kAttackBudgetStream = 6,
};

}  // namespace

const char* MethodName(Method m) {
  switch (m) {
    case Method::kDistributedResilient:
      return "distributed-resilient";
    case Method::kSemiDistributed:
      return "semi-dist";
    case Method::kCentralizedGreedy:
      return "cent-greedy";
    case Method::kCentralizedRandom:
      return "cent-rand";
    case Method::kOptimal:
      return "optimal";
  }
  return "?";
}

std::optional<Method> ParseMethod(const std::string& name) {
  for (Method m : kAllMethods) {
    if (name == MethodName(m)) return m;
  }
  return std::nullopt;
}

const char* AttackModelName(AttackModel a) {
  return a == AttackModel::kBruteForce ? "brute_force" : "greedy";
}

namespace {

template <typename T>
T Get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key `" + key + "`: expected " +
                      (std::is_same_v<T, std::string> ? "a string"
                       : std::is_integral_v<T>        ? "an integer"
                                                      : "a number"));
  }
}

void Require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("config key `" + key + "`: " + what);
}

}  // namespace

TrialConfig ParseTrialConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  TrialConfig cfg;
  bool k_given = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_robots") {
      cfg.n_robots = Get<int>(j, key);
    } else if (key == "k_attacks") {
      cfg.k_attacks = Get<int>(j, key);
      cfg.k_fraction.reset();
      k_given = true;
    } else if (key == "k_fraction") {
      Require(value.is_array() && value.size() == 2 && value[0].is_number() &&
                  value[1].is_number(),
              key, "expected [lo, hi]");
      cfg.k_fraction = {value[0].get<double>(), value[1].get<double>()};
      if (!k_given) cfg.k_attacks.reset();
    } else if (key == "field_width") {
      cfg.field_width = Get<int>(j, key);
    } else if (key == "field_height") {
      cfg.field_height = Get<int>(j, key);
    } else if (key == "basis_min") {
      cfg.field.min_basis = Get<int>(j, key);
    } else if (key == "basis_max") {
      cfg.field.max_basis = Get<int>(j, key);
    } else if (key == "sigma_min") {
      cfg.field.min_sigma = Get<double>(j, key);
    } else if (key == "sigma_max") {
      cfg.field.max_sigma = Get<double>(j, key);
    } else if (key == "weight_min") {
      cfg.field.min_weight = Get<double>(j, key);
    } else if (key == "weight_max") {
      cfg.field.max_weight = Get<double>(j, key);
    } else if (key == "sensing_radius") {
      cfg.sensing_radius = Get<double>(j, key);
    } else if (key == "step") {
      cfg.step = Get<double>(j, key);
    } else if (key == "pose_min") {
      cfg.pose_min = Get<double>(j, key);
    } else if (key == "pose_max") {
      cfg.pose_max = Get<double>(j, key);
    } else if (key == "edge_probability") {
      cfg.edge_probability = Get<double>(j, key);
    } else if (key == "noise_mean_frac") {
      cfg.noise_mean_frac = Get<double>(j, key);
    } else if (key == "noise_var_frac") {
      cfg.noise_var_frac = Get<double>(j, key);
    } else if (key == "methods") {
      Require(value.is_array() && !value.empty(), key,
              "expected a non-empty list of method names");
      cfg.methods.clear();
      for (const json& m : value) {
        Require(m.is_string(), key, "method names must be strings");
        auto parsed = ParseMethod(m.get<std::string>());
        Require(parsed.has_value(), key,
                "unknown method `" + m.get<std::string>() + "`");
        cfg.methods.push_back(*parsed);
      }
    } else if (key == "attack") {
      const auto a = Get<std::string>(j, key);
      Require(a == "brute_force" || a == "greedy", key,
              "expected `brute_force` or `greedy`");
      cfg.attack = a == "greedy" ? AttackModel::kGreedy : AttackModel::kBruteForce;
    } else if (key == "semi_budget") {
      const auto b = Get<std::string>(j, key);
      Require(b == "min_k_group" || b == "proportional", key,
              "expected `min_k_group` or `proportional`");
      cfg.semi_budget =
          b == "proportional" ? SemiBudget::kProportional : SemiBudget::kMinKGroup;
    } else if (key == "utility") {
      const auto u = Get<std::string>(j, key);
      Require(u == "noisy" || u == "true", key, "expected `noisy` or `true`");
      cfg.utility_on_noisy = u == "noisy";
    } else if (key == "seed") {
      cfg.seed = Get<uint64_t>(j, key);
    } else {
      throw ConfigError("unknown config key `" + key + "`");
    }
  }

  Require(cfg.n_robots >= 1, "n_robots", "must be at least 1");
  if (cfg.k_attacks) {
    Require(*cfg.k_attacks >= 0 && *cfg.k_attacks <= cfg.n_robots, "k_attacks",
            "must lie in [0, n_robots]");
  } else {
    Require(cfg.k_fraction.has_value(), "k_attacks",
            "either k_attacks or k_fraction is required");
    const auto [lo, hi] = *cfg.k_fraction;
    Require(lo >= 0 && hi <= 1 && lo <= hi, "k_fraction",
            "must satisfy 0 <= lo <= hi <= 1");
  }
  Require(cfg.field_width >= 1, "field_width", "must be positive");
  Require(cfg.field_height >= 1, "field_height", "must be positive");
  Require(cfg.field.min_basis >= 1 && cfg.field.min_basis <= cfg.field.max_basis,
          "basis_min", "need 1 <= basis_min <= basis_max");
  Require(cfg.field.min_sigma > 0 && cfg.field.min_sigma <= cfg.field.max_sigma,
          "sigma_min", "need 0 < sigma_min <= sigma_max");
  Require(cfg.field.min_weight > 0 && cfg.field.min_weight <= cfg.field.max_weight,
          "weight_min", "need 0 < weight_min <= weight_max");
  Require(cfg.sensing_radius > 0, "sensing_radius", "must be positive");
  Require(cfg.step > 0, "step", "must be positive");
  Require(cfg.pose_min <= cfg.pose_max, "pose_min", "must not exceed pose_max");
  Require(cfg.edge_probability >= 0 && cfg.edge_probability <= 1,
          "edge_probability", "must lie in [0, 1]");
  Require(cfg.noise_mean_frac >= 0, "noise_mean_frac", "must be non-negative");
  Require(cfg.noise_var_frac >= 0, "noise_var_frac", "must be non-negative");
  return cfg;
}

TrialConfig LoadTrialConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseTrialConfig(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string TrialConfigToJson(const TrialConfig& cfg) {
  json j;
  j["n_robots"] = cfg.n_robots;
  if (cfg.k_attacks) j["k_attacks"] = *cfg.k_attacks;
  if (cfg.k_fraction) {
    j["k_fraction"] = {cfg.k_fraction->first, cfg.k_fraction->second};
  }
  j["field_width"] = cfg.field_width;
  j["field_height"] = cfg.field_height;
  j["basis_min"] = cfg.field.min_basis;
  j["basis_max"] = cfg.field.max_basis;
  j["sigma_min"] = cfg.field.min_sigma;
  j["sigma_max"] = cfg.field.max_sigma;
  j["weight_min"] = cfg.field.min_weight;
  j["weight_max"] = cfg.field.max_weight;
  j["sensing_radius"] = cfg.sensing_radius;
  j["step"] = cfg.step;
  j["pose_min"] = cfg.pose_min;
  j["pose_max"] = cfg.pose_max;
  j["edge_probability"] = cfg.edge_probability;
  j["noise_mean_frac"] = cfg.noise_mean_frac;
  j["noise_var_frac"] = cfg.noise_var_frac;
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(MethodName(m));
  j["methods"] = methods;
  j["attack"] = AttackModelName(cfg.attack);
  j["semi_budget"] =
      cfg.semi_budget == SemiBudget::kProportional ? "proportional" : "min_k_group";
  j["utility"] = cfg.utility_on_noisy ? "noisy" : "true";
  j["seed"] = cfg.seed;
  return j.dump(2);
}

TrialConfig SmallSettingConfig() { return TrialConfig{}; }

TrialConfig ScalingSettingConfig(int n_robots) {
  TrialConfig cfg;
  cfg.n_robots = n_robots;
  cfg.k_attacks.reset();
  cfg.k_fraction = {0.5, 0.75};
  cfg.noise_mean_frac = 0.10;
  cfg.noise_var_frac = 0.05;
  cfg.methods = {Method::kDistributedResilient, Method::kSemiDistributed,
                 Method::kCentralizedGreedy, Method::kCentralizedRandom};
  cfg.attack = AttackModel::kGreedy;
  return cfg;
}

const MethodOutcome* TrialRecord::Find(Method m) const {
  for (const MethodOutcome& o : outcomes) {
    if (o.method == m) return &o;
  }
  return nullptr;
}

TrialInstance BuildTrialInstance(const TrialConfig& cfg, uint64_t seed) {
  int k = 0;
  if (cfg.k_attacks) {
    k = *cfg.k_attacks;
  } else {
    Rng rng(DeriveSeed(seed, kAttackBudgetStream));
    std::uniform_real_distribution<double> frac(cfg.k_fraction->first * cfg.n_robots,
                                                cfg.k_fraction->second * cfg.n_robots);
    k = static_cast<int>(std::nearbyint(frac(rng)));
    k = std::clamp(k, 0, cfg.n_robots);
  }
  GmmField field = GenerateField(cfg.field_width, cfg.field_height,
                                 DeriveSeed(seed, kFieldStream), cfg.field);
  std::vector<RobotPose> poses = RandomPoses(cfg.n_robots, cfg.pose_min,
                                             cfg.pose_max,
                                             DeriveSeed(seed, kPoseStream));
  ActionSpace space = BuildActions(poses, cfg.step, cfg.sensing_radius,
                                   cfg.field_width, cfg.field_height);
  CommGraph graph = RandomConnectedGraph(cfg.n_robots, cfg.edge_probability,
                                         DeriveSeed(seed, kGraphStream));
  std::shared_ptr<const SetFunction> truth =
      std::make_shared<CoverageFunction>(field, space.actions);
  std::shared_ptr<const SetFunction> objective = truth;
  if (cfg.noise_mean_frac > 0 || cfg.noise_var_frac > 0) {
    objective = std::make_shared<NoisyFunction>(
        objective, cfg.noise_mean_frac, cfg.noise_var_frac,
        DeriveSeed(seed, kNoiseStream));
  }
  return TrialInstance{k,
                       std::move(field),
                       std::move(poses),
                       std::move(space),
                       std::move(graph),
                       std::move(objective),
                       std::move(truth)};
}

namespace {

ActionSet ProportionalSemiDistributed(const SetFunction& f,
                                      const ActionPartition& partition,
                                      const CommGraph& graph, int k) {
  const int n = partition.num_robots();
  ActionSet out;
  for (const auto& group : CliquePartition(graph)) {
    const int size = static_cast<int>(group.size());
    const int budget = std::min(size, (k * size + n - 1) / n);
    out = out.Union(CentralizedResilient(f, partition, group, budget).actions);
  }
  return out;
}

}  // namespace

TrialRecord RunTrial(const TrialConfig& cfg, uint64_t seed, int trial_index,
                     const RunOptions& protocol_options) {
  const TrialInstance inst = BuildTrialInstance(cfg, seed);
  const SetFunction& f = *inst.objective;
  // Attacks, reported values and the benchmark optimum.
  const SetFunction& utility = cfg.utility_on_noisy ? f : *inst.truth;
  const ActionPartition& partition = inst.space.partition;

  TrialRecord rec;
  rec.trial = trial_index;
  rec.seed = seed;
  rec.n = cfg.n_robots;
  rec.k = inst.k;
  rec.diameter = Diameter(inst.graph);

  for (Method m : cfg.methods) {
    MethodOutcome out;
    out.method = m;
    try {
      switch (m) {
        case Method::kDistributedResilient: {
          const DistributedResult r =
              RunDistributed(inst.graph, f, partition, inst.k, protocol_options);
          out.actions = r.solution;
          out.rounds = r.total_rounds();
          out.oracle_calls = *std::max_element(r.oracle_calls.begin(),
                                               r.oracle_calls.end());
          break;
        }
        case Method::kSemiDistributed:
          out.actions =
              cfg.semi_budget == SemiBudget::kMinKGroup
                  ? SemiDistributedResilient(f, partition, inst.graph, inst.k)
                  : ProportionalSemiDistributed(f, partition, inst.graph, inst.k);
          break;
        case Method::kCentralizedGreedy:
          out.actions = CentralizedGreedy(f, partition);
          break;
        case Method::kCentralizedRandom:
          out.actions =
              CentralizedRandom(partition, DeriveSeed(seed, kRandomMethodStream));
          break;
        case Method::kOptimal:
          out.actions = BruteForceOptimal(utility, partition, inst.k).actions;
          break;
      }
      out.pre_value = utility.Evaluate(out.actions);
      const AttackResult attack = cfg.attack == AttackModel::kBruteForce
                                      ? WorstCaseAttack(utility, out.actions, inst.k)
                                      : GreedyAttack(utility, out.actions, inst.k);
      out.attacked = attack.removed;
      out.post_value = attack.surviving_value;
    } catch (const SizeError& e) {
      out.error = e.what();
    }
    rec.outcomes.push_back(std::move(out));
  }

  const MethodOutcome* optimal = rec.Find(Method::kOptimal);
  if (cfg.attack == AttackModel::kBruteForce && optimal && !optimal->error) {
    const double best = optimal->post_value;
    for (MethodOutcome& o : rec.outcomes) {
      if (o.error) continue;
      o.ratio = best > 0 ? o.post_value / best : 1.0;
    }
  }
  return rec;
}

Quantiles Summarize(std::vector<double> values) {
  Quantiles q;
  q.count = static_cast<int>(values.size());
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * (values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - lo) * (values[hi] - values[lo]);
  };
  double sum = 0;
  for (double v : values) sum += v;
  q.mean = sum / values.size();
  q.min = values.front();
  q.max = values.back();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  return q;
}

std::vector<MethodSummary> SummarizeRecords(
    const TrialConfig& cfg, const std::vector<TrialRecord>& records) {
  std::vector<MethodSummary> summary;
  for (Method m : cfg.methods) {
    MethodSummary s;
    s.method = m;
    std::vector<double> pre, post, ratio;
    bool any_ratio = false;
    for (const TrialRecord& rec : records) {
      const MethodOutcome* o = rec.Find(m);
      if (!o) continue;
      ++s.trials;
      if (o->error) {
        ++s.errors;
        continue;
      }
      pre.push_back(o->pre_value);
      post.push_back(o->post_value);
      if (o->ratio) {
        ratio.push_back(*o->ratio);
        any_ratio = true;
      }
    }
    s.pre = Summarize(std::move(pre));
    s.post = Summarize(std::move(post));
    if (any_ratio) s.ratio = Summarize(std::move(ratio));
    summary.push_back(std::move(s));
  }
  return summary;
}

ExperimentResult RunExperiment(const TrialConfig& cfg, int n_trials,
                               uint64_t base_seed, int threads) {
  if (n_trials < 1) throw std::invalid_argument("need at least one trial");
  ExperimentResult result;
  result.records.resize(n_trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n_trials; i = next++) {
      result.records[i] = RunTrial(cfg, base_seed + i, i);
    }
  };
  const int workers = std::clamp(threads, 1, n_trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  result.summary = SummarizeRecords(cfg, result.records);
  return result;
}

namespace {

std::string Num(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

json QuantilesJson(const Quantiles& q) {
  return {{"count", q.count}, {"mean", q.mean},     {"min", q.min},
          {"q1", q.q1},       {"median", q.median}, {"q3", q.q3},
          {"max", q.max}};
}

}  // namespace

void WriteTrialsCsv(const std::vector<TrialRecord>& records, std::ostream& os) {
  os << kTrialsCsvHeader << '\n';
  for (const TrialRecord& rec : records) {
    for (const MethodOutcome& o : rec.outcomes) {
      os << rec.trial << ',' << MethodName(o.method) << ',';
      if (!o.error) os << Num(o.pre_value);
      os << ',';
      if (!o.error) os << Num(o.post_value);
      os << ',';
      if (o.ratio) os << Num(*o.ratio);
      os << ',';
      if (o.rounds) os << *o.rounds;
      os << ',';
      if (o.oracle_calls) os << *o.oracle_calls;
      os << ',' << rec.k << ',' << rec.n << ',' << rec.seed << '\n';
    }
  }
}

std::string SummaryToJson(const TrialConfig& cfg, int n_trials,
                          uint64_t base_seed,
                          const std::vector<MethodSummary>& summary) {
  json j;
  j["config"] = json::parse(TrialConfigToJson(cfg));
  j["n_trials"] = n_trials;
  j["base_seed"] = base_seed;
  json methods = json::object();
  for (const MethodSummary& s : summary) {
    json m;
    m["trials"] = s.trials;
    m["errors"] = s.errors;
    m["pre_value"] = QuantilesJson(s.pre);
    m["post_value"] = QuantilesJson(s.post);
    if (s.ratio) m["ratio"] = QuantilesJson(*s.ratio);
    methods[MethodName(s.method)] = m;
  }
  j["methods"] = methods;
  return j.dump(2);
}

std::string TraceToJsonLine(const RoundTrace& t, int trial) {
  json j;
  j["trial"] = trial;
  j["phase"] = t.phase;
  j["round"] = t.round;
  j["robot"] = t.robot;
  j["role"] = t.role == Role::kSelector ? "selector" : "conveyor";
  j["alpha1"] = t.alpha1;
  j["alpha2"] = t.alpha2;
  j["s1"] = t.removals;
  json s2 = json::array();
  for (const RankedEntry& e : t.complements) {
    s2.push_back(
        {{"action", e.action}, {"owner", e.owner}, {"gain", e.gain}, {"order", e.order}});
  }
  j["s2"] = s2;
  return j.dump();
}

}  // namespace resilient
