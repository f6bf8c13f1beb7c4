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

// Python bindings for the core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "resilient/commgraph.h"
#include "resilient/environment.h"
#include "resilient/harness.h"
#include "resilient/objective.h"
#include "resilient/oracles.h"
#include "resilient/protocol.h"

namespace py = pybind11;

namespace resilient {
namespace {

std::vector<ActionId> Ids(const ActionSet& s) { return {s.begin(), s.end()}; }

py::dict EntryDict(const RankedEntry& e) {
  py::dict d;
  d["action"] = e.action;
  d["owner"] = e.owner;
  d["gain"] = e.gain;
  d["order"] = e.order;
  return d;
}

py::list Entries(const RankedSequence& seq) {
  py::list out;
  for (const RankedEntry& e : seq) out.append(EntryDict(e));
  return out;
}

py::list Removals(const std::vector<ScoredAction>& s) {
  py::list out;
  for (const ScoredAction& a : s) {
    py::dict d;
    d["action"] = a.action;
    d["owner"] = a.owner;
    d["value"] = a.value;
    out.append(d);
  }
  return out;
}

py::dict OutcomeDict(const MethodOutcome& o) {
  py::dict d;
  d["method"] = MethodName(o.method);
  d["error"] = o.error;
  d["actions"] = Ids(o.actions);
  d["pre_value"] = o.pre_value;
  d["attacked"] = Ids(o.attacked);
  d["post_value"] = o.post_value;
  d["ratio"] = o.ratio;
  d["rounds"] = o.rounds;
  d["oracle_calls"] = o.oracle_calls;
  return d;
}

py::dict RecordDict(const TrialRecord& r) {
  py::dict d;
  d["trial"] = r.trial;
  d["seed"] = r.seed;
  d["n"] = r.n;
  d["k"] = r.k;
  d["diameter"] = r.diameter;
  py::list outcomes;
  for (const MethodOutcome& o : r.outcomes) outcomes.append(OutcomeDict(o));
  d["outcomes"] = outcomes;
  return d;
}

TrialConfig ConfigArg(const std::string& json_text) {
  return json_text.empty() ? SmallSettingConfig() : ParseTrialConfig(json_text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Attack-resilient distributed multi-robot action selection";
  py::register_exception<SizeError>(m, "SizeError", PyExc_RuntimeError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  py::class_<GmmField>(m, "GmmField")
      .def_property_readonly("width", &GmmField::width)
      .def_property_readonly("height", &GmmField::height)
      .def("importance",
           py::overload_cast<int, int>(&GmmField::importance, py::const_),
           py::arg("x"), py::arg("y"))
      .def("cells", &GmmField::cells)
      .def("to_text", [](const GmmField& f) {
        std::ostringstream os;
        WriteFieldText(f, os);
        return os.str();
      });
  m.def("generate_field", [](int w, int h, uint64_t seed) {
    return GenerateField(w, h, seed);
  }, py::arg("width"), py::arg("height"), py::arg("seed"));
  m.def("read_field_text", [](const std::string& text) {
    std::istringstream is(text);
    return ReadFieldText(is);
  });

  py::class_<CoverageInstance>(m, "CoverageInstance")
      .def_property_readonly("num_robots",
                             [](const CoverageInstance& c) {
                               return c.partition.num_robots();
                             })
      .def_property_readonly("action_lists",
                             [](const CoverageInstance& c) {
                               return c.partition.lists();
                             })
      .def_property_readonly("edges",
                             [](const CoverageInstance& c) { return c.graph.Edges(); })
      .def_property_readonly("diameter",
                             [](const CoverageInstance& c) { return Diameter(c.graph); })
      .def("evaluate", [](const CoverageInstance& c, std::vector<ActionId> s) {
        return c.objective->Evaluate(ActionSet(std::move(s)));
      });
  m.def("random_coverage_instance", &RandomCoverageInstance,
        py::arg("actions_per_robot"), py::arg("edge_probability"), py::arg("seed"));

  m.def("run_distributed", [](const CoverageInstance& c, int k) {
    const DistributedResult r = RunDistributed(c.graph, *c.objective, c.partition, k);
    py::dict d;
    d["solution"] = Ids(r.solution);
    d["removals"] = Removals(r.removals);
    d["complements"] = Entries(r.complements);
    d["diameter"] = r.diameter;
    d["phase1_rounds"] = r.phase1_rounds;
    d["phase1_agreement_round"] = r.phase1_agreement_round;
    d["phase2_rounds"] = r.phase2_rounds;
    d["oracle_calls"] = r.oracle_calls;
    return d;
  }, py::arg("instance"), py::arg("k"));
  m.def("centralized_resilient", [](const CoverageInstance& c, int k) {
    return Ids(CentralizedResilient(*c.objective, c.partition, k).actions);
  }, py::arg("instance"), py::arg("k"));
  m.def("centralized_greedy", [](const CoverageInstance& c) {
    return Ids(CentralizedGreedy(*c.objective, c.partition));
  });
  m.def("brute_force_optimal", [](const CoverageInstance& c, int k) {
    const OptimalSolution o = BruteForceOptimal(*c.objective, c.partition, k);
    return py::make_tuple(Ids(o.actions), o.value);
  }, py::arg("instance"), py::arg("k"));
  m.def("worst_case_attack",
        [](const CoverageInstance& c, std::vector<ActionId> s, int k) {
          const AttackResult a = WorstCaseAttack(*c.objective, ActionSet(std::move(s)), k);
          return py::make_tuple(Ids(a.removed), a.surviving_value);
        },
        py::arg("instance"), py::arg("solution"), py::arg("k"));
  m.def("greedy_attack",
        [](const CoverageInstance& c, std::vector<ActionId> s, int k) {
          const AttackResult a = GreedyAttack(*c.objective, ActionSet(std::move(s)), k);
          return py::make_tuple(Ids(a.removed), a.surviving_value);
        },
        py::arg("instance"), py::arg("solution"), py::arg("k"));

  m.def("parse_config", [](const std::string& text) {
    return TrialConfigToJson(ParseTrialConfig(text));
  }, "Validate a JSON config and return it with every key filled in.");
  m.def("small_setting_config", [] { return TrialConfigToJson(SmallSettingConfig()); });
  m.def("scaling_setting_config", [](int n) {
    return TrialConfigToJson(ScalingSettingConfig(n));
  });
  m.def("run_trial", [](const std::string& config_json, uint64_t seed) {
    return RecordDict(RunTrial(ConfigArg(config_json), seed));
  }, py::arg("config_json"), py::arg("seed"));
  m.def("run_experiment",
        [](const std::string& config_json, int n_trials, uint64_t base_seed,
           int threads) {
          const TrialConfig cfg = ConfigArg(config_json);
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = RunExperiment(cfg, n_trials, base_seed, threads);
          }
          std::ostringstream csv;
          WriteTrialsCsv(r.records, csv);
          py::dict d;
          d["trials_csv"] = csv.str();
          d["summary_json"] = SummaryToJson(cfg, n_trials, base_seed, r.summary);
          return d;
        },
        py::arg("config_json"), py::arg("n_trials"), py::arg("base_seed"),
        py::arg("threads") = 1);
  m.def("verify", [](bool small, int instances, uint64_t seed) {
    VerifyOptions options{small, instances, seed};
    py::dict d;
    for (const CheckTally& t : RunVerification(options)) {
      d[py::str(t.name)] = py::make_tuple(t.passed, t.failed);
    }
    return d;
  }, py::arg("small") = false, py::arg("instances") = 0, py::arg("seed") = 1);
}

}  // namespace resilient
