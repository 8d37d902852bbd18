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

// Shared Expenses Problem toolkit: turning group expenses into balances,
// settling balances greedily or optimally, and the subset-sum reduction.

#ifndef SANTA_SEP_HPP_
#define SANTA_SEP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "santa/types.hpp"

namespace santa {

struct Payment {
  std::size_t payer = 0;
  Cents amount = 0;
};

struct ExpenseGroup {
  std::vector<std::size_t> members;
  std::vector<Payment> payments;
};

struct ExpenseScenario {
  std::vector<std::string> participants;
  std::vector<ExpenseGroup> groups;
  Cents bound_b = 0;
  std::uint64_t seed = 0;
  // Smallest money unit the protocols move, in cents. Balances and the
  // bound must be multiples of it.
  Cents quantum = 1;
};

// Throws InvalidInput if members or payers are out of range, a payer is not
// a group member, an amount is negative or a group is empty.
void validate(const ExpenseScenario& scenario);

struct Transfer {
  std::size_t from = 0;
  std::size_t to = 0;
  Cents amount = 0;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct SettlementPlan {
  std::vector<Transfer> transfers;

  std::size_t size() const { return transfers.size(); }
};

// Per-group equal shares with the remainder spread one cent at a time over
// the lowest-index members, minus each participant's own payments.
BalanceVector aggregate_balances(const ExpenseScenario& scenario);

// Applies each transfer: balances[from] -= amount, balances[to] += amount.
BalanceVector apply_plan(BalanceVector balances, const SettlementPlan& plan);

bool is_zero_sum(std::span<const Cents> balances);

// Repeatedly pays min(max, -min) from the largest debtor to the largest
// creditor. Ties go to the lowest index.
SettlementPlan greedy_settle(std::span<const Cents> balances);

inline constexpr std::size_t kMaxExactParticipants = 20;

struct ExactSettlement {
  std::size_t count = 0;
  SettlementPlan plan;
};

// Minimum number of transfers: m - k, where m counts nonzero balances and k
// is the largest number of zero-sum parts they split into.
// Throws InvalidInput for more than kMaxExactParticipants entries.
ExactSettlement min_transactions(std::span<const Cents> balances);

// True iff the balances settle in strictly fewer than size() - 1 transfers.
bool sep_decision(std::span<const Cents> balances);

// Either the subset-sum instance is trivially "yes" (its total is zero) or
// the equivalent settlement instance is the values plus the negated total.
struct SspReduction {
  bool answer_yes = false;
  BalanceVector instance;
};

SspReduction reduce_ssp_to_sep(std::span<const std::int64_t> values);

// Full pipeline: reduction followed by the exact decision procedure.
bool ssp_via_sep(std::span<const std::int64_t> values);

}  // namespace santa

#endif  // SANTA_SEP_HPP_
