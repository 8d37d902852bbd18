# Copyright 2026 The Conspiracy Santa Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Private group settlement: Shared Expenses and Conspiracy Santa."""

from ._core import (
    InvariantViolation,
    ProtocolRun,
    Scenario,
    Transfer,
    audit_participant,
    greedy_settle,
    load_scenario,
    min_transactions,
    parse_scenario,
    real_view_distribution,
    reduce_ssp_to_sep,
    run_physical_fast,
    run_physical_round2,
    run_physical_round2_simplified,
    run_protocol,
    run_scenario,
    sep_decision,
    sim_view_distribution,
    ssp_via_sep,
    tv_distance,
    uniform_chi_square_p_value,
)

__all__ = [name for name in dir() if not name.startswith("_")]
