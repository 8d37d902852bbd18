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

#include "santa/cli.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "santa/audit.hpp"
#include "santa/io.hpp"
#include "santa/protocol.hpp"
#include "santa/sep.hpp"

namespace santa {

namespace {

using nlohmann::json;

std::vector<std::int64_t> parse_int_list(const std::string& text,
                                         const std::string& flag) {
  try {
    return json::parse(text).get<std::vector<std::int64_t>>();
  } catch (const json::exception&) {
    throw InvalidInput(flag + " must be a JSON array of integers");
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  require(file.good(), "cannot open output file " + path);
  file << text;
}

struct Options {
  std::string scenario;
  std::string balances;
  std::string values;
  std::string out;
  std::string summary;
  std::string method = "greedy";
  std::string variant = "slow";
  std::optional<std::uint64_t> seed;
  std::optional<Cents> force_t1;
  std::optional<Cents> bound;
  bool unsafe_test = false;
  std::size_t participant = 0;
  std::uint64_t trials = 10000;
  double threshold = kDefaultTvThreshold;
};

BalanceVector balances_from(const Options& o) {
  require(o.scenario.empty() != o.balances.empty(),
          "give exactly one of --scenario or --balances");
  if (!o.scenario.empty()) {
    return aggregate_balances(load_scenario(o.scenario).scenario);
  }
  return parse_int_list(o.balances, "--balances");
}

int do_settle(const Options& o, std::ostream& out) {
  const BalanceVector balances = balances_from(o);
  json result;
  result["balances"] = balances;
  result["method"] = o.method;
  if (o.method == "exact") {
    const auto exact = min_transactions(balances);
    result["count"] = exact.count;
    result["transfers"] = to_json(exact.plan);
  } else {
    const auto plan = greedy_settle(balances);
    result["count"] = plan.size();
    result["transfers"] = to_json(plan);
  }
  emit(result.dump() + "\n", o.out, out);
  return 0;
}

int do_decide(const Options& o, std::ostream& out) {
  const BalanceVector balances = balances_from(o);
  json result;
  result["balances"] = balances;
  result["min_transactions"] = min_transactions(balances).count;
  result["answer"] = sep_decision(balances);
  emit(result.dump() + "\n", o.out, out);
  return 0;
}

int do_reduce(const Options& o, std::ostream& out) {
  require(!o.values.empty(), "--values is required");
  const auto values = parse_int_list(o.values, "--values");
  const auto reduced = reduce_ssp_to_sep(values);
  json result;
  if (reduced.answer_yes) {
    result["answer"] = "yes";
  } else {
    result["instance"] = reduced.instance;
    result["answer"] = sep_decision(reduced.instance) ? "yes" : "no";
  }
  emit(result.dump() + "\n", o.out, out);
  return 0;
}

int do_santa_run(const Options& o, std::ostream& out) {
  require(!o.scenario.empty(), "--scenario is required");
  require(!o.force_t1 || o.unsafe_test,
          "--force-t1 voids the privacy guarantee; add --unsafe-test to use it");
  ScenarioDocument doc = load_scenario(o.scenario);
  if (o.seed) doc.scenario.seed = *o.seed;
  if (o.bound) doc.scenario.bound_b = *o.bound;
  ProtocolRun run = run_full(doc.scenario, parse_variant(o.variant), o.force_t1);
  if (!o.out.empty()) emit(trace_jsonl(run), o.out, out);
  emit(run_summary(run).dump() + "\n", o.summary, out);
  return 0;
}

int do_audit(const Options& o, std::ostream& out) {
  BalanceVector balances;
  Cents bound = o.bound.value_or(0);
  std::uint64_t seed = o.seed.value_or(0);
  if (!o.scenario.empty()) {
    require(o.balances.empty(), "give exactly one of --scenario or --balances");
    const auto doc = load_scenario(o.scenario);
    balances = aggregate_balances(doc.scenario);
    if (!o.bound) bound = doc.scenario.bound_b;
    if (!o.seed) seed = doc.scenario.seed;
  } else {
    balances = balances_from(o);
  }
  const Variant variant = parse_variant(o.variant);
  require(!is_physical(variant), "only slow and fast can be audited");
  const auto report = audit_participant(balances, bound, variant, o.participant,
                                        o.trials, seed, o.threshold);
  emit(to_json(report).dump() + "\n", o.out, out);
  return 0;
}

void add_balance_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file");
  cmd->add_option("--balances", o.balances, "Balance vector as a JSON array");
  cmd->add_option("--out", o.out, "Write the result here instead of stdout");
}

json error_json(std::string_view kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Private group settlement: Shared Expenses and Conspiracy Santa"};
  app.require_subcommand(1);
  Options o;

  auto* settle = app.add_subcommand("settle", "Settle a balance vector");
  settle->add_option("method", o.method, "greedy or exact")
      ->check(CLI::IsMember({"greedy", "exact"}));
  add_balance_source(settle, o);

  auto* decide = app.add_subcommand(
      "decide", "Can the balances settle in fewer than n-1 transfers?");
  add_balance_source(decide, o);

  auto* reduce = app.add_subcommand("reduce", "Decide subset sum via settlement");
  reduce->add_option("--values", o.values, "Integers as a JSON array")->required();
  reduce->add_option("--out", o.out, "Write the result here instead of stdout");

  auto* santa_run = app.add_subcommand("santa-run", "Run a Conspiracy Santa protocol");
  santa_run->add_option("variant", o.variant, "slow, fast, physical-slow, physical-fast")
      ->check(CLI::IsMember({"slow", "fast", "physical-slow", "physical-fast"}));
  santa_run->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  santa_run->add_option("--seed", o.seed, "Override the scenario seed");
  santa_run->add_option("--bound", o.bound, "Override the bound B (cents)");
  santa_run->add_option("--out", o.out, "Trace JSON-lines output file");
  santa_run->add_option("--summary", o.summary, "Summary JSON output (default stdout)");
  santa_run->add_option("--force-t1", o.force_t1,
                        "TEST ONLY: fix the first random amount (cents)");
  santa_run->add_flag("--unsafe-test", o.unsafe_test,
                      "Acknowledge that --force-t1 breaks privacy");

  auto* audit = app.add_subcommand("audit", "Compare real and simulated views");
  audit->add_option("--variant", o.variant, "slow or fast")
      ->check(CLI::IsMember({"slow", "fast"}));
  audit->add_option("--participant", o.participant, "0-based participant index");
  audit->add_option("--trials", o.trials, "Samples per distribution");
  audit->add_option("--bound", o.bound, "Bound B (cents)");
  audit->add_option("--seed", o.seed, "Master seed");
  audit->add_option("--threshold", o.threshold, "TV distance threshold");
  add_balance_source(audit, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << '\n';
    return 1;
  }

  try {
    if (*settle) return do_settle(o, out);
    if (*decide) return do_decide(o, out);
    if (*reduce) return do_reduce(o, out);
    if (*santa_run) return do_santa_run(o, out);
    if (*audit) return do_audit(o, out);
  } catch (const InvalidInput& e) {
    err << error_json("invalid_input", e.what()).dump() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    err << error_json("invariant_violation", e.what()).dump() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace santa
