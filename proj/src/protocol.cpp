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

#include "santa/protocol.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace santa {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kSlow: return "slow";
    case Variant::kFast: return "fast";
    case Variant::kPhysicalSlow: return "physical-slow";
    case Variant::kPhysicalFast: return "physical-fast";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kSlow, Variant::kFast, Variant::kPhysicalSlow,
                    Variant::kPhysicalFast}) {
    if (to_string(v) == name) return v;
  }
  throw InvalidInput("unknown variant: " + std::string(name));
}

bool is_fast(Variant v) {
  return v == Variant::kFast || v == Variant::kPhysicalFast;
}

bool is_physical(Variant v) {
  return v == Variant::kPhysicalSlow || v == Variant::kPhysicalFast;
}

namespace step {

Cents slow_relay(Cents balance, Cents bound) {
  const Cents t = floor_mod(balance, bound);
  return t == 0 ? bound : t;
}

Cents fast_relay(Cents balance, std::size_t position, Cents bound) {
  return 1 + floor_mod(balance - 1, bound) + static_cast<Cents>(position) * bound;
}

std::size_t withdrawals_for(Cents balance, Cents bound) {
  ensure(balance <= 0 && balance % bound == 0,
         "withdrawing participant is not at a non-positive multiple of B");
  return static_cast<std::size_t>(-balance / bound);
}

}  // namespace step

BalanceVector ProtocolRun::balances() const {
  if (physical_) return physical_->balances;
  return ledger_.balances();
}

std::vector<ParticipantState> ProtocolRun::states() const {
  const BalanceVector current = balances();
  std::vector<ParticipantState> out;
  for (std::size_t i = 0; i < current.size(); ++i) {
    out.push_back({i, current[i], addresses_.at(i)});
  }
  return out;
}

Cents ProtocolRun::max_amount() const {
  Cents best = 0;
  for (const auto& tx : trace()) best = std::max(best, tx.amount);
  return best;
}

ProtocolRun setup_from_balances(BalanceVector balances, Cents bound_b,
                                Variant variant, std::uint64_t seed,
                                Cents quantum, std::optional<Cents> forced_t1) {
  require(balances.size() >= kMinParticipants,
          "a conspiracy needs at least 3 participants");
  require(quantum > 0, "quantum must be positive");
  require(bound_b > 0 && bound_b % quantum == 0,
          "bound B must be a positive multiple of the quantum");
  require(is_zero_sum(balances), "balances must sum to zero");
  for (Cents p : balances) {
    require(p % quantum == 0, "balance is not a multiple of the quantum");
    require(is_fast(variant) ? p < bound_b : p <= bound_b, "bound B too small");
  }
  if (forced_t1) {
    const Cents t = *forced_t1;
    const Cents q = quantum;
    require(t % q == 0, "forced t1 is not a multiple of the quantum");
    if (is_fast(variant)) {
      require(t >= 0 && t <= bound_b - q, "forced t1 outside [0, B-1]");
    } else {
      require(t >= q && t <= bound_b, "forced t1 outside [1, B]");
    }
  }

  ProtocolRun run(seed);
  run.variant_ = variant;
  run.bound_b_ = bound_b;
  run.quantum_ = quantum;
  run.initial_ = balances;
  run.ledger_ = Ledger(std::move(balances));
  run.forced_t1_ = forced_t1;
  run.addresses_.resize(run.initial_.size());
  return run;
}

ProtocolRun setup(const ExpenseScenario& scenario, Variant variant,
                  std::optional<Cents> forced_t1) {
  return setup_from_balances(aggregate_balances(scenario), scenario.bound_b,
                             variant, scenario.seed, scenario.quantum, forced_t1);
}

void ProtocolRun::withdraw_all(RoundTag tag) {
  for (std::size_t i = 0; i < participants(); ++i) {
    const auto k = step::withdrawals_for(ledger_.balance(i), bound_b_);
    for (std::size_t j = 0; j < k; ++j) {
      std::string token = mint_token(rng_);
      ledger_.public_withdraw(i, bound_b_, token, tag);
      addresses_[i].push_back(std::move(token));
    }
  }
  ledger_.close_round(rng_);
}

void run_round1_slow(ProtocolRun& run) {
  require(!is_fast(run.variant_), "round 1 belongs to the slow variants");
  require(run.stage_ == Stage::kSetup, "round 1 already ran");
  const Cents q = run.quantum_;
  const Cents bound = run.bound_b_ / q;
  const std::size_t n = run.participants();
  Ledger& ledger = run.ledger_;

  const Cents t1 = run.forced_t1_ ? *run.forced_t1_ / q : run.rng_.uniform(1, bound);
  run.t1_ = t1 * q;
  ledger.private_transfer(0, 1, t1 * q, RoundTag::kRound1);
  for (std::size_t i = 1; i < n; ++i) {
    const Cents t = step::slow_relay(ledger.balance(i) / q, bound);
    ledger.private_transfer(i, (i + 1) % n, t * q, RoundTag::kRound1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Cents p = ledger.balance(i);
    ensure(p % run.bound_b_ == 0, "balance not a multiple of B after round 1");
    ensure(p <= run.bound_b_, "debt above B after round 1");
    if (run.initial_[i] > 0) {
      ensure(p == 0 || p == run.bound_b_, "debtor not rounded to 0 or B");
    }
  }
  ensure(ledger.conserved_total() == 0, "round 1 broke the zero sum");
  run.stage_ = Stage::kRounded;
}

void run_round2_and_3_slow(ProtocolRun& run) {
  require(run.variant_ == Variant::kSlow, "rounds 2-3 belong to the slow variant");
  require(run.stage_ == Stage::kRounded, "round 1 has not run");
  Ledger& ledger = run.ledger_;
  for (std::size_t i = 0; i < run.participants(); ++i) {
    ensure(ledger.balance(i) % run.bound_b_ == 0,
           "balance not a multiple of B entering round 2");
    std::string token = mint_token(run.rng_);
    ledger.public_deposit(i, run.bound_b_, token);
    run.addresses_[i].push_back(std::move(token));
  }
  ledger.close_round(run.rng_);
  run.withdraw_all(RoundTag::kPiggyWithdraw);
  ensure(ledger.piggy_balance() == 0, "piggy bank not empty after round 3");
  run.stage_ = Stage::kComplete;
}

void run_merged_fast(ProtocolRun& run) {
  require(is_fast(run.variant_), "merged round belongs to the fast variants");
  require(run.stage_ == Stage::kSetup, "merged round already ran");
  const Cents q = run.quantum_;
  const Cents bound = run.bound_b_ / q;
  const std::size_t n = run.participants();
  const Cents pot = static_cast<Cents>(n) * run.bound_b_;
  Ledger& ledger = run.ledger_;

  const Cents t1 =
      run.forced_t1_ ? *run.forced_t1_ / q : run.rng_.uniform(0, bound - 1);
  run.t1_ = t1 * q;
  ledger.private_transfer(0, 1, (1 + t1) * q, RoundTag::kMerged);
  for (std::size_t i = 1; i < n; ++i) {
    const Cents amount = step::fast_relay(ledger.balance(i) / q, i, bound);
    ledger.private_transfer(i, (i + 1) % n, amount * q, RoundTag::kMerged);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const Cents p = ledger.balance(i);
    ensure(p <= 0 && p % run.bound_b_ == 0,
           "ring member not at a non-positive multiple of B");
  }
  ensure(ledger.balance(0) % run.bound_b_ == 0,
         "first participant not at a multiple of B");
  if (run.variant_ == Variant::kFast) {
    std::string token = mint_token(run.rng_);
    ledger.public_deposit(0, pot, token);
    run.addresses_[0].push_back(std::move(token));
    ledger.close_round(run.rng_);
    ensure(ledger.piggy_balance() == pot, "piggy bank does not hold n*B");
    ensure(ledger.balance(0) <= 0, "first participant still in debt");
  }
  ensure(ledger.conserved_total() == 0, "merged round broke the zero sum");
  run.stage_ = Stage::kRounded;
}

void run_recovery_fast(ProtocolRun& run) {
  require(run.variant_ == Variant::kFast, "recovery belongs to the fast variant");
  require(run.stage_ == Stage::kRounded, "merged round has not run");
  const Cents pot = static_cast<Cents>(run.participants()) * run.bound_b_;
  ensure(run.ledger_.piggy_balance() == pot, "piggy bank does not hold n*B");
  run.withdraw_all(RoundTag::kPiggyWithdraw);
  ensure(run.ledger_.piggy_balance() == 0, "piggy bank not empty after recovery");
  run.stage_ = Stage::kComplete;
}

void run_physical_phase(ProtocolRun& run) {
  require(is_physical(run.variant_), "not a physical variant");
  require(run.stage_ == Stage::kRounded, "private round has not run");
  const BalanceVector& current = run.ledger_.balances();
  if (run.variant_ == Variant::kPhysicalSlow) {
    run.physical_ = run_physical_round2(current, run.bound_b_);
  } else {
    BalanceVector charged = current;
    charged[0] -= static_cast<Cents>(charged.size()) * run.bound_b_;
    run.physical_ = run_physical_fast(charged, run.bound_b_);
  }
  run.stage_ = Stage::kComplete;
}

namespace {

void check_bounds(const ProtocolRun& run) {
  const std::size_t n = run.participants();
  const Cents bound = run.bound_b();
  const auto& trace = run.trace();
  const std::size_t expected =
      run.variant() == Variant::kSlow   ? 3 * n
      : run.variant() == Variant::kFast ? 2 * n + 1
                                        : n;
  ensure(trace.size() == expected,
         "transaction count " + std::to_string(trace.size()) + " != " +
             std::to_string(expected));
  std::size_t ring = 0;
  for (const auto& tx : trace) {
    if (!is_fast(run.variant())) {
      ensure(tx.amount >= 1 && tx.amount <= bound, "slow amount outside [1, B]");
    } else if (tx.kind == ChannelKind::kPrivate) {
      const auto k = static_cast<Cents>(ring++);
      ensure(tx.amount >= k * bound + 1 && tx.amount <= (k + 1) * bound,
             "fast ring amount outside its window");
    } else if (tx.piggy == PiggyDirection::kToPiggy) {
      ensure(tx.amount == static_cast<Cents>(n) * bound, "deposit is not n*B");
    } else {
      ensure(tx.amount == bound, "withdrawal is not B");
    }
  }
  for (Cents p : run.balances()) ensure(p == 0, "nonzero final balance");
}

}  // namespace

void run_to_completion(ProtocolRun& run) {
  switch (run.variant()) {
    case Variant::kSlow:
      run_round1_slow(run);
      run_round2_and_3_slow(run);
      break;
    case Variant::kFast:
      run_merged_fast(run);
      run_recovery_fast(run);
      break;
    case Variant::kPhysicalSlow:
      run_round1_slow(run);
      run_physical_phase(run);
      break;
    case Variant::kPhysicalFast:
      run_merged_fast(run);
      run_physical_phase(run);
      break;
  }
  check_bounds(run);
}

ProtocolRun run_full(const ExpenseScenario& scenario, Variant variant,
                     std::optional<Cents> forced_t1) {
  ProtocolRun run = setup(scenario, variant, forced_t1);
  run_to_completion(run);
  return run;
}

}  // namespace santa
