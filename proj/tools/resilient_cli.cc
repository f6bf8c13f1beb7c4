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

// Command-line front end: single trials, batch experiments, the invariant
// sweep, and field export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "resilient/environment.h"
#include "resilient/harness.h"
#include "resilient/oracles.h"

namespace fs = std::filesystem;
using namespace resilient;

namespace {

TrialConfig ConfigFrom(const std::string& path, std::optional<uint64_t> seed) {
  TrialConfig cfg = path.empty() ? SmallSettingConfig() : LoadTrialConfig(path);
  if (seed) cfg.seed = *seed;
  return cfg;
}

std::ofstream OpenOut(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

void PrintRecord(const TrialRecord& rec) {
  std::printf("trial %d seed %llu: N=%d K=%d d(G)=%d\n", rec.trial,
              static_cast<unsigned long long>(rec.seed), rec.n, rec.k,
              rec.diameter);
  for (const MethodOutcome& o : rec.outcomes) {
    if (o.error) {
      std::printf("  %-22s error: %s\n", MethodName(o.method), o.error->c_str());
      continue;
    }
    std::printf("  %-22s pre %12.4f  post %12.4f", MethodName(o.method),
                o.pre_value, o.post_value);
    if (o.ratio) std::printf("  ratio %.4f", *o.ratio);
    if (o.rounds) std::printf("  rounds %d", *o.rounds);
    if (o.oracle_calls) {
      std::printf("  oracle_calls %lld", static_cast<long long>(*o.oracle_calls));
    }
    std::printf("  S=%s\n", ToString(o.actions).c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attack-resilient distributed multi-robot action selection"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_dir;
  bool trace = false;

  auto* trial = app.add_subcommand("trial", "Run one trial and print every method");
  trial->add_option("--config", config_path, "Trial config (JSON)");
  trial->add_option("--seed", seed, "Trial seed (overrides the config)");
  trial->add_option("--out-dir", out_dir, "Write trials.csv (and trace.jsonl) here");
  trial->add_flag("--trace", trace, "Emit the per-round protocol trace");

  int n_trials = 200;
  int threads = 1;
  auto* experiment = app.add_subcommand("experiment", "Run a batch of trials");
  experiment->add_option("--config", config_path, "Trial config (JSON)");
  experiment->add_option("--seed", seed, "Base seed; trial i uses seed + i");
  experiment->add_option("--trials", n_trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--threads", threads, "Concurrent trials")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--out-dir", out_dir, "Output directory")->required();

  bool small = false;
  int instances = 0;
  auto* verify = app.add_subcommand("verify", "Run the invariant sweep");
  verify->add_flag("--small", small, "Exhaustive small instances (checks the bound)");
  verify->add_option("--instances", instances, "Number of random instances");
  verify->add_option("--seed", seed, "Sweep seed");

  std::string field_out;
  auto* field = app.add_subcommand("field", "Export a generated importance field");
  field->add_option("--config", config_path, "Trial config (JSON)");
  field->add_option("--seed", seed, "Trial seed (overrides the config)");
  field->add_option("--out-dir", out_dir, "Write field.txt here");
  field->add_option("--out", field_out, "Write the grid to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*trial) {
      const TrialConfig cfg = ConfigFrom(config_path, seed);
      std::ofstream trace_file;
      std::ostream* trace_sink = &std::cout;
      if (trace && !out_dir.empty()) {
        trace_file = OpenOut(out_dir, "trace.jsonl");
        trace_sink = &trace_file;
      }
      RunOptions options;
      if (trace) {
        options.trace = [&](const RoundTrace& t) {
          *trace_sink << TraceToJsonLine(t, 0) << '\n';
        };
      }
      const TrialRecord rec = RunTrial(cfg, cfg.seed, 0, options);
      PrintRecord(rec);
      if (!out_dir.empty()) {
        std::ofstream csv = OpenOut(out_dir, "trials.csv");
        WriteTrialsCsv({rec}, csv);
      }
      return 0;
    }
    if (*experiment) {
      const TrialConfig cfg = ConfigFrom(config_path, std::nullopt);
      const uint64_t base = seed.value_or(cfg.seed);
      const ExperimentResult res = RunExperiment(cfg, n_trials, base, threads);
      std::ofstream csv = OpenOut(out_dir, "trials.csv");
      WriteTrialsCsv(res.records, csv);
      std::ofstream summary = OpenOut(out_dir, "summary.json");
      summary << SummaryToJson(cfg, n_trials, base, res.summary) << '\n';
      for (const MethodSummary& s : res.summary) {
        std::printf("%-22s median post %12.4f  mean post %12.4f", MethodName(s.method),
                    s.post.median, s.post.mean);
        if (s.ratio) std::printf("  ratio [%.4f, %.4f]", s.ratio->min, s.ratio->max);
        if (s.errors) std::printf("  errors %d", s.errors);
        std::printf("\n");
      }
      return 0;
    }
    if (*verify) {
      VerifyOptions options;
      options.small = small;
      options.instances = instances;
      options.seed = seed.value_or(1);
      int failed = 0;
      for (const CheckTally& c : RunVerification(options)) {
        std::printf("%-44s passed %5d  failed %5d\n", c.name.c_str(), c.passed,
                    c.failed);
        failed += c.failed;
      }
      return failed == 0 ? 0 : 1;
    }
    if (*field) {
      const TrialConfig cfg = ConfigFrom(config_path, seed);
      const TrialInstance inst = BuildTrialInstance(cfg, cfg.seed);
      if (!field_out.empty()) {
        std::ofstream out(field_out);
        if (!out) throw std::runtime_error("cannot write " + field_out);
        WriteFieldText(inst.field, out);
      } else if (!out_dir.empty()) {
        std::ofstream out = OpenOut(out_dir, "field.txt");
        WriteFieldText(inst.field, out);
      } else {
        WriteFieldText(inst.field, std::cout);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SizeError& e) {
    std::fprintf(stderr, "size guard: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
