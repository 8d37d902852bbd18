// Copyright 2026 The Conspiracy Santa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON formats: scenario documents, the JSON-lines trace, run summaries,
// settlement plans and audit reports. Keys are emitted in sorted order so
// identical runs produce byte-identical output.

#ifndef SANTA_IO_HPP_
#define SANTA_IO_HPP_

#include <optional>
#include <string>

#include "json.hpp"

#include "santa/audit.hpp"
#include "santa/ledger.hpp"
#include "santa/physical.hpp"
#include "santa/protocol.hpp"
#include "santa/sep.hpp"

namespace santa {

struct ScenarioDocument {
  ExpenseScenario scenario;
  std::optional<Variant> variant;
};

// {participants: [names], groups: [{members: [name|index], payments:
//  [{payer: name|index, amount_cents}]}], bound_b_cents, seed, variant,
//  unit_cents}. Throws InvalidInput on schema errors.
ScenarioDocument parse_scenario(const nlohmann::json& doc);
ScenarioDocument load_scenario(const std::string& path);

// Private transactions expose endpoints; public ones only round, direction,
// amount and token.
nlohmann::json to_json(const Transaction& tx);
nlohmann::json to_json(const PublicEvent& event);
nlohmann::json to_json(const RoomVisit& visit);
nlohmann::json to_json(const SettlementPlan& plan);
nlohmann::json to_json(const AuditReport& report);

// One JSON object per line, newline-terminated.
std::string trace_jsonl(const ProtocolRun& run);
nlohmann::json run_summary(const ProtocolRun& run);

}  // namespace santa

#endif  // SANTA_IO_HPP_
