# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Attack-resilient distributed multi-robot action selection."""

from resilient_coverage._core import (
    CoverageInstance,
    GmmField,
    ProtocolError,
    SizeError,
    brute_force_optimal,
    centralized_greedy,
    centralized_resilient,
    generate_field,
    greedy_attack,
    parse_config,
    random_coverage_instance,
    read_field_text,
    run_distributed,
    run_experiment,
    run_trial,
    scaling_setting_config,
    small_setting_config,
    verify,
    worst_case_attack,
)

__all__ = [
    "CoverageInstance",
    "GmmField",
    "ProtocolError",
    "SizeError",
    "brute_force_optimal",
    "centralized_greedy",
    "centralized_resilient",
    "generate_field",
    "greedy_attack",
    "parse_config",
    "random_coverage_instance",
    "read_field_text",
    "run_distributed",
    "run_experiment",
    "run_trial",
    "scaling_setting_config",
    "small_setting_config",
    "verify",
    "worst_case_attack",
]
