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

#include "santa/sep.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace santa {

void validate(const ExpenseScenario& scenario) {
  const std::size_t n = scenario.participants.size();
  require(scenario.quantum > 0, "quantum must be positive");
  for (std::size_t g = 0; g < scenario.groups.size(); ++g) {
    const auto& group = scenario.groups[g];
    const std::string where = "group " + std::to_string(g) + ": ";
    require(!group.members.empty(), where + "no members");
    std::vector<std::size_t> sorted = group.members;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            where + "duplicate member");
    for (auto m : group.members) require(m < n, where + "member out of range");
    for (const auto& pay : group.payments) {
      require(pay.amount >= 0, where + "negative payment");
      require(std::binary_search(sorted.begin(), sorted.end(), pay.payer),
              where + "payer is not a member");
    }
  }
}

BalanceVector aggregate_balances(const ExpenseScenario& scenario) {
  validate(scenario);
  BalanceVector balances(scenario.participants.size(), 0);
  for (const auto& group : scenario.groups) {
    std::vector<std::size_t> members = group.members;
    std::sort(members.begin(), members.end());
    Cents total = 0;
    for (const auto& pay : group.payments) {
      total += pay.amount;
      balances[pay.payer] -= pay.amount;
    }
    const auto size = static_cast<Cents>(members.size());
    const Cents share = total / size;
    const Cents remainder = total % size;
    for (std::size_t k = 0; k < members.size(); ++k) {
      balances[members[k]] += share + (static_cast<Cents>(k) < remainder ? 1 : 0);
    }
  }
  ensure(is_zero_sum(balances), "aggregate_balances: result is not zero-sum");
  return balances;
}

bool is_zero_sum(std::span<const Cents> balances) {
  return std::accumulate(balances.begin(), balances.end(), Cents{0}) == 0;
}

BalanceVector apply_plan(BalanceVector balances, const SettlementPlan& plan) {
  for (const auto& t : plan.transfers) {
    require(t.from < balances.size() && t.to < balances.size(),
            "transfer endpoint out of range");
    balances[t.from] -= t.amount;
    balances[t.to] += t.amount;
  }
  return balances;
}

SettlementPlan greedy_settle(std::span<const Cents> balances) {
  require(is_zero_sum(balances), "balances must sum to zero");
  BalanceVector k(balances.begin(), balances.end());
  SettlementPlan plan;
  while (!k.empty()) {
    // max_element/min_element return the first extremum: lowest index wins.
    const auto debtor = static_cast<std::size_t>(
        std::max_element(k.begin(), k.end()) - k.begin());
    const auto creditor = static_cast<std::size_t>(
        std::min_element(k.begin(), k.end()) - k.begin());
    if (k[debtor] == 0) break;
    const Cents amount = std::min(k[debtor], -k[creditor]);
    plan.transfers.push_back({debtor, creditor, amount});
    k[debtor] -= amount;
    k[creditor] += amount;
  }
  return plan;
}

namespace {

// Largest number of zero-sum parts over partitions of `values`, returned as
// the parts themselves (indices into values).
std::vector<std::vector<std::size_t>> max_zero_sum_partition(
    const std::vector<Cents>& values) {
  const std::size_t m = values.size();
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<Cents> sum(full + 1, 0);
  std::vector<std::uint8_t> best(full + 1, 0);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const auto bit = static_cast<std::size_t>(std::countr_zero(low));
    sum[mask] = sum[mask ^ low] + values[bit];
    std::uint8_t b = 0;
    for (std::size_t rest = mask; rest != 0; rest &= rest - 1) {
      const std::size_t one = rest & (~rest + 1);
      b = std::max(b, best[mask ^ one]);
    }
    best[mask] = static_cast<std::uint8_t>(b + (sum[mask] == 0 ? 1 : 0));
  }

  // Walk back from the full set, peeling one element at a time along an
  // optimal path; every zero-sum mask on the path closes a part.
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> current;
  std::size_t mask = full;
  while (mask != 0) {
    const std::uint8_t target =
        static_cast<std::uint8_t>(best[mask] - (sum[mask] == 0 ? 1 : 0));
    if (sum[mask] == 0 && !current.empty()) {
      parts.push_back(std::move(current));
      current.clear();
    }
    for (std::size_t rest = mask; rest != 0; rest &= rest - 1) {
      const std::size_t one = rest & (~rest + 1);
      if (best[mask ^ one] == target) {
        current.push_back(static_cast<std::size_t>(std::countr_zero(one)));
        mask ^= one;
        break;
      }
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

}  // namespace

ExactSettlement min_transactions(std::span<const Cents> balances) {
  require(balances.size() <= kMaxExactParticipants,
          "instance too large for exact solver");
  require(is_zero_sum(balances), "balances must sum to zero");

  std::vector<std::size_t> nonzero;
  std::vector<Cents> values;
  for (std::size_t i = 0; i < balances.size(); ++i) {
    if (balances[i] != 0) {
      nonzero.push_back(i);
      values.push_back(balances[i]);
    }
  }
  ExactSettlement result;
  if (nonzero.empty()) return result;

  const auto parts = max_zero_sum_partition(values);
  result.count = nonzero.size() - parts.size();
  for (const auto& part : parts) {
    std::vector<Cents> sub;
    for (auto idx : part) sub.push_back(values[idx]);
    for (const auto& t : greedy_settle(sub).transfers) {
      result.plan.transfers.push_back(
          {nonzero[part[t.from]], nonzero[part[t.to]], t.amount});
    }
  }
  ensure(result.plan.size() == result.count,
         "min_transactions: plan size differs from optimum");
  return result;
}

bool sep_decision(std::span<const Cents> balances) {
  const auto exact = min_transactions(balances);
  return balances.size() >= 2 && exact.count < balances.size() - 1;
}

SspReduction reduce_ssp_to_sep(std::span<const std::int64_t> values) {
  const Cents s = std::accumulate(values.begin(), values.end(), Cents{0});
  SspReduction out;
  if (s == 0) {
    out.answer_yes = true;
    return out;
  }
  out.instance.assign(values.begin(), values.end());
  out.instance.push_back(-s);
  return out;
}

bool ssp_via_sep(std::span<const std::int64_t> values) {
  const auto reduced = reduce_ssp_to_sep(values);
  return reduced.answer_yes || sep_decision(reduced.instance);
}

}  // namespace santa
