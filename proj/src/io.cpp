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

#include "santa/io.hpp"

#include <fstream>
#include <map>
#include <string_view>

namespace santa {

using nlohmann::json;

namespace {

std::size_t resolve_participant(const json& ref,
                                const std::map<std::string, std::size_t>& names,
                                std::size_t n) {
  if (ref.is_string()) {
    const auto it = names.find(ref.get<std::string>());
    require(it != names.end(), "unknown participant " + ref.dump());
    return it->second;
  }
  require(ref.is_number_integer(), "participant must be a name or an index");
  const auto idx = ref.get<std::int64_t>();
  require(idx >= 0 && static_cast<std::size_t>(idx) < n,
          "participant index out of range: " + ref.dump());
  return static_cast<std::size_t>(idx);
}

template <typename T>
T field(const json& obj, std::string_view key) {
  const auto it = obj.find(key);
  require(it != obj.end(), "missing field '" + std::string(key) + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InvalidInput("field '" + std::string(key) + "' has the wrong type");
  }
}

}  // namespace

ScenarioDocument parse_scenario(const json& doc) {
  require(doc.is_object(), "scenario must be a JSON object");
  ScenarioDocument out;
  ExpenseScenario& sc = out.scenario;
  sc.participants = field<std::vector<std::string>>(doc, "participants");
  std::map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < sc.participants.size(); ++i) {
    require(names.emplace(sc.participants[i], i).second,
            "duplicate participant name " + sc.participants[i]);
  }
  const std::size_t n = sc.participants.size();

  if (doc.contains("groups")) {
    require(doc["groups"].is_array(), "groups must be an array");
    for (const auto& g : doc["groups"]) {
      ExpenseGroup group;
      require(g.contains("members") && g["members"].is_array(),
              "group needs a members array");
      for (const auto& m : g["members"]) {
        group.members.push_back(resolve_participant(m, names, n));
      }
      if (g.contains("payments")) {
        for (const auto& p : g["payments"]) {
          require(p.contains("payer"), "payment needs a payer");
          group.payments.push_back({resolve_participant(p["payer"], names, n),
                                    field<Cents>(p, "amount_cents")});
        }
      }
      sc.groups.push_back(std::move(group));
    }
  }
  sc.bound_b = doc.contains("bound_b_cents") ? field<Cents>(doc, "bound_b_cents") : 0;
  sc.seed = doc.contains("seed") ? field<std::uint64_t>(doc, "seed") : 0;
  sc.quantum = doc.contains("unit_cents") ? field<Cents>(doc, "unit_cents") : 1;
  if (doc.contains("variant")) {
    out.variant = parse_variant(field<std::string>(doc, "variant"));
  }
  validate(sc);
  return out;
}

ScenarioDocument load_scenario(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open scenario file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Transaction& tx) {
  json j;
  j["kind"] = to_string(tx.kind);
  j["round_tag"] = to_string(tx.round);
  j["amount_cents"] = tx.amount;
  if (tx.kind == ChannelKind::kPrivate) {
    j["from"] = *tx.sender;
    j["to"] = *tx.receiver;
  } else {
    j["direction"] = to_string(tx.piggy);
    j["token"] = tx.token;
  }
  return j;
}

json to_json(const PublicEvent& event) {
  return {{"kind", to_string(ChannelKind::kPublicAnonymous)},
          {"round_tag", to_string(event.round)},
          {"amount_cents", event.amount},
          {"direction", to_string(event.direction)},
          {"token", event.token}};
}

json to_json(const RoomVisit& visit) {
  return {{"kind", "room_visit"},
          {"visitor", visit.visitor},
          {"phase", visit.phase == VisitPhase::kDeposit ? "deposit" : "collect"},
          {"stack_height", visit.stack_height}};
}

json to_json(const SettlementPlan& plan) {
  json transfers = json::array();
  for (const auto& t : plan.transfers) {
    transfers.push_back({{"from", t.from}, {"to", t.to}, {"amount_cents", t.amount}});
  }
  return transfers;
}

json to_json(const AuditReport& r) {
  return {{"variant", to_string(r.variant)},
          {"participant", r.participant},
          {"trials", r.trials},
          {"B", r.bound_b},
          {"n", r.n},
          {"tv_distance", r.tv_distance},
          {"noise_floor", r.noise_floor},
          {"threshold", r.threshold},
          {"pass", r.pass}};
}

std::string trace_jsonl(const ProtocolRun& run) {
  std::string out;
  for (const auto& tx : run.trace()) {
    out += to_json(tx).dump();
    out += '\n';
  }
  if (run.physical()) {
    for (const auto& visit : run.physical()->trace) {
      out += to_json(visit).dump();
      out += '\n';
    }
  }
  return out;
}

json run_summary(const ProtocolRun& run) {
  json j;
  j["variant"] = to_string(run.variant());
  j["n"] = run.participants();
  j["bound_b_cents"] = run.bound_b();
  j["initial_balances"] = run.initial_balances();
  j["final_balances"] = run.balances();
  j["tx_count"] = run.transaction_count();
  j["max_tx_amount_cents"] = run.max_amount();
  if (run.physical()) j["room_visits"] = run.physical()->trace.size();
  return j;
}

}  // namespace santa
