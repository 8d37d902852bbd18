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

#include "santa/physical.hpp"

#include <algorithm>
#include <string>

#include "santa/sep.hpp"

namespace santa {

std::vector<Envelope> EnvelopeStack::take_top(std::size_t k) {
  ensure(k <= stack_.size(), "take exceeds stack height");
  std::vector<Envelope> out(stack_.begin(), stack_.begin() + static_cast<std::ptrdiff_t>(k));
  stack_.erase(stack_.begin(), stack_.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

std::size_t EnvelopeStack::money_count() const {
  return static_cast<std::size_t>(
      std::count(stack_.begin(), stack_.end(), Envelope::kMoney));
}

namespace {

void check_multiples(std::span<const Cents> balances, Cents bound_b) {
  require(bound_b > 0, "bound B must be positive");
  require(balances.size() >= 1, "no participants");
  require(is_zero_sum(balances), "balances must sum to zero");
  for (Cents p : balances) {
    require(p % bound_b == 0, "balance is not a multiple of B");
    require(p <= bound_b, "debt above B after rounding");
  }
}

// Second phase shared by every variant: each participant in index order
// enters once and empties their credit from the top of the stack.
void collect_phase(PhysicalOutcome& out, Cents bound_b) {
  for (std::size_t i = 0; i < out.balances.size(); ++i) {
    Cents& p = out.balances[i];
    ensure(p <= 0, "participant still in debt at collection");
    const auto k = static_cast<std::size_t>(-p / bound_b);
    for (Envelope e : out.stack.take_top(k)) {
      ensure(e == Envelope::kMoney, "creditor drew a dummy envelope");
      p += bound_b;
      ++out.money_withdrawn;
      out.stack.push_dummy_bottom();
    }
    out.trace.push_back({i, VisitPhase::kCollect, out.stack.height()});
  }
  for (Cents p : out.balances) ensure(p == 0, "nonzero balance after collection");
  ensure(out.money_deposited == out.money_withdrawn,
         "money envelopes not conserved");
}

}  // namespace

PhysicalOutcome run_physical_round2(std::span<const Cents> balances,
                                    Cents bound_b) {
  check_multiples(balances, bound_b);
  PhysicalOutcome out;
  out.balances.assign(balances.begin(), balances.end());
  for (std::size_t i = 0; i < out.balances.size(); ++i) {
    out.stack.push_top(Envelope::kMoney);
    out.balances[i] -= bound_b;
    ++out.money_deposited;
    out.trace.push_back({i, VisitPhase::kDeposit, out.stack.height()});
  }
  collect_phase(out, bound_b);
  return out;
}

PhysicalOutcome run_physical_round2_simplified(std::span<const Cents> balances,
                                               Cents bound_b) {
  check_multiples(balances, bound_b);
  PhysicalOutcome out;
  out.balances.assign(balances.begin(), balances.end());
  for (std::size_t i = 0; i < out.balances.size(); ++i) {
    if (out.balances[i] == bound_b) {
      out.stack.push_top(Envelope::kMoney);
      out.balances[i] = 0;
      ++out.money_deposited;
    } else {
      out.stack.push_dummy_bottom();
    }
    out.trace.push_back({i, VisitPhase::kDeposit, out.stack.height()});
  }
  collect_phase(out, bound_b);
  return out;
}

PhysicalOutcome run_physical_fast(std::span<const Cents> balances, Cents bound_b) {
  require(bound_b > 0, "bound B must be positive");
  require(!balances.empty(), "no participants");
  Cents total = 0;
  for (Cents p : balances) {
    require(p <= 0 && p % bound_b == 0,
            "balance is not a non-positive multiple of B");
    total += p;
  }
  const auto n = balances.size();
  require(total == -static_cast<Cents>(n) * bound_b,
          "balances must sum to -n*B");
  PhysicalOutcome out;
  out.balances.assign(balances.begin(), balances.end());
  for (std::size_t k = 0; k < n; ++k) {
    out.stack.push_top(Envelope::kMoney);
    ++out.money_deposited;
  }
  out.trace.push_back({0, VisitPhase::kDeposit, out.stack.height()});
  collect_phase(out, bound_b);
  return out;
}

}  // namespace santa
