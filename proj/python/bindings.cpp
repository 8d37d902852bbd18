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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "santa/audit.hpp"
#include "santa/io.hpp"
#include "santa/physical.hpp"
#include "santa/protocol.hpp"
#include "santa/sep.hpp"

namespace py = pybind11;
using namespace santa;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ViewDistribution from_counts(const std::map<std::string, std::uint64_t>& counts) {
  ViewDistribution d;
  for (const auto& [key, count] : counts) d.add(key, count);
  return d;
}

py::dict outcome_dict(const PhysicalOutcome& o) {
  py::list trace;
  for (const auto& v : o.trace) trace.append(to_python(to_json(v)));
  py::dict d;
  d["balances"] = o.balances;
  d["trace"] = trace;
  d["stack_height"] = o.stack.height();
  d["money_deposited"] = o.money_deposited;
  d["money_withdrawn"] = o.money_withdrawn;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Private group settlement: Shared Expenses and Conspiracy Santa";

  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<Transfer>(m, "Transfer")
      .def_readonly("sender", &Transfer::from)
      .def_readonly("receiver", &Transfer::to)
      .def_readonly("amount", &Transfer::amount)
      .def("__eq__", [](const Transfer& a, const Transfer& b) { return a == b; })
      .def("__repr__", [](const Transfer& t) {
        return "Transfer(" + std::to_string(t.from) + " -> " + std::to_string(t.to) +
               ", " + std::to_string(t.amount) + ")";
      });

  py::class_<ExpenseScenario>(m, "Scenario")
      .def_readonly("participants", &ExpenseScenario::participants)
      .def_readonly("bound_b", &ExpenseScenario::bound_b)
      .def_readonly("seed", &ExpenseScenario::seed)
      .def_readonly("unit_cents", &ExpenseScenario::quantum)
      .def("balances", [](const ExpenseScenario& s) { return aggregate_balances(s); });

  m.def("parse_scenario", [](const std::string& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput(std::string("scenario is not valid JSON: ") + e.what());
    }
    return parse_scenario(doc).scenario;
  }, py::arg("text"));
  m.def("load_scenario", [](const std::string& path) { return load_scenario(path).scenario; },
        py::arg("path"));

  m.def("greedy_settle",
        [](const BalanceVector& b) { return greedy_settle(b).transfers; },
        py::arg("balances"));
  m.def("min_transactions", [](const BalanceVector& b) {
    auto r = min_transactions(b);
    return py::make_tuple(r.count, r.plan.transfers);
  }, py::arg("balances"));
  m.def("sep_decision", [](const BalanceVector& b) { return sep_decision(b); },
        py::arg("balances"));
  m.def("reduce_ssp_to_sep", [](const std::vector<std::int64_t>& v) {
    auto r = reduce_ssp_to_sep(v);
    return py::make_tuple(r.answer_yes, r.instance);
  }, py::arg("values"));
  m.def("ssp_via_sep", [](const std::vector<std::int64_t>& v) { return ssp_via_sep(v); },
        py::arg("values"));

  py::class_<ProtocolRun>(m, "ProtocolRun")
      .def_property_readonly("variant",
                             [](const ProtocolRun& r) { return std::string(to_string(r.variant())); })
      .def_property_readonly("bound_b", &ProtocolRun::bound_b)
      .def_property_readonly("balances", &ProtocolRun::balances)
      .def_property_readonly("initial_balances", &ProtocolRun::initial_balances)
      .def_property_readonly("transaction_count", &ProtocolRun::transaction_count)
      .def_property_readonly("max_amount", &ProtocolRun::max_amount)
      .def_property_readonly("t1", &ProtocolRun::t1)
      .def("trace", [](const ProtocolRun& r) {
        py::list rows;
        for (const auto& tx : r.trace()) rows.append(to_python(to_json(tx)));
        if (r.physical())
          for (const auto& v : r.physical()->trace) rows.append(to_python(to_json(v)));
        return rows;
      })
      .def("trace_jsonl", &trace_jsonl)
      .def("summary", [](const ProtocolRun& r) { return to_python(run_summary(r)); })
      .def("view", [](const ProtocolRun& r, std::size_t i) {
        return canonicalize(r.ledger().extract_view(i));
      }, py::arg("participant"));

  m.def("run_protocol",
        [](const BalanceVector& balances, Cents bound_b, const std::string& variant,
           std::uint64_t seed, Cents unit_cents, std::optional<Cents> forced_t1) {
          auto run = setup_from_balances(balances, bound_b, parse_variant(variant), seed,
                                         unit_cents, forced_t1);
          run_to_completion(run);
          return run;
        },
        py::arg("balances"), py::arg("bound_b"), py::arg("variant") = "slow",
        py::arg("seed") = 0, py::arg("unit_cents") = 1, py::arg("forced_t1") = py::none());
  m.def("run_scenario",
        [](const ExpenseScenario& s, const std::string& variant,
           std::optional<Cents> forced_t1) {
          return run_full(s, parse_variant(variant), forced_t1);
        },
        py::arg("scenario"), py::arg("variant") = "slow", py::arg("forced_t1") = py::none());

  m.def("real_view_distribution",
        [](const BalanceVector& b, Cents bound, const std::string& variant, std::size_t i,
           std::uint64_t trials, std::uint64_t seed) {
          return real_view_distribution(b, bound, parse_variant(variant), i, trials, seed)
              .histogram();
        },
        py::arg("balances"), py::arg("bound_b"), py::arg("variant"), py::arg("participant"),
        py::arg("trials"), py::arg("seed") = 0);
  m.def("sim_view_distribution",
        [](std::size_t n, Cents bound, Cents balance, const std::string& variant,
           std::size_t i, std::uint64_t trials, std::uint64_t seed) {
          return sim_view_distribution({n, bound, balance}, parse_variant(variant), i,
                                       trials, seed)
              .histogram();
        },
        py::arg("n"), py::arg("bound_b"), py::arg("balance"), py::arg("variant"),
        py::arg("participant"), py::arg("trials"), py::arg("seed") = 0);
  m.def("tv_distance",
        [](const std::map<std::string, std::uint64_t>& a,
           const std::map<std::string, std::uint64_t>& b) {
          return tv_distance(from_counts(a), from_counts(b));
        },
        py::arg("a"), py::arg("b"));
  m.def("uniform_chi_square_p_value",
        [](const std::vector<std::uint64_t>& c) { return uniform_chi_square_p_value(c); },
        py::arg("counts"));
  m.def("audit_participant",
        [](const BalanceVector& b, Cents bound, const std::string& variant, std::size_t i,
           std::uint64_t trials, std::uint64_t seed, double threshold) {
          return to_python(
              to_json(audit_participant(b, bound, parse_variant(variant), i, trials, seed,
                                        threshold)));
        },
        py::arg("balances"), py::arg("bound_b"), py::arg("variant"), py::arg("participant"),
        py::arg("trials"), py::arg("seed") = 0, py::arg("threshold") = kDefaultTvThreshold);

  m.def("run_physical_round2",
        [](const BalanceVector& b, Cents bound) {
          return outcome_dict(run_physical_round2(b, bound));
        },
        py::arg("balances"), py::arg("bound_b"));
  m.def("run_physical_round2_simplified",
        [](const BalanceVector& b, Cents bound) {
          return outcome_dict(run_physical_round2_simplified(b, bound));
        },
        py::arg("balances"), py::arg("bound_b"));
  m.def("run_physical_fast",
        [](const BalanceVector& b, Cents bound) {
          return outcome_dict(run_physical_fast(b, bound));
        },
        py::arg("balances"), py::arg("bound_b"));
}
