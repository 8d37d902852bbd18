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

// The two Conspiracy Santa settlement protocols as seeded state machines
// over the ledger.
//
// Slow:  private rounding ring (n transfers, each 1..B), everybody deposits
//        B into the piggy bank (n), creditors withdraw B per multiple owed
//        (n). 3n transactions, amounts bounded by B.
// Fast:  rounding ring where the i-th transfer also carries (i-1)*B, the
//        first participant deposits n*B, creditors withdraw. 2n+1
//        transactions, the i-th private amount lies in [(i-1)B+1, iB].
//
// All arithmetic runs in "quanta" (cents by default). With a quantum of
// 100 the protocols move whole euros, which is how the worked examples in
// the literature are usually written.
//
// RNG draw order for a run seeded with s: (1) t_1 unless forced, (2) one
// token per public transaction in execution order, (3) one shuffle of the
// public transactions at the close of each public round.

#ifndef SANTA_PROTOCOL_HPP_
#define SANTA_PROTOCOL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "santa/ledger.hpp"
#include "santa/physical.hpp"
#include "santa/sep.hpp"
#include "santa/types.hpp"

namespace santa {

enum class Variant { kSlow, kFast, kPhysicalSlow, kPhysicalFast };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);  // "slow", "physical-fast", ...
bool is_fast(Variant v);
bool is_physical(Variant v);

inline constexpr std::size_t kMinParticipants = 3;

// One protocol step as executed by a single participant. Shared by the
// engine and the privacy simulators so both run the same code. All values
// are in quanta.
namespace step {

// Slow ring: amount forwarded by a participant whose balance (including the
// amount just received) is `balance`. Always in [1, bound].
Cents slow_relay(Cents balance, Cents bound);

// Fast ring: amount forwarded by the participant at 0-based ring position
// `position` (>= 1). Always in [position*bound + 1, (position+1)*bound].
Cents fast_relay(Cents balance, std::size_t position, Cents bound);

// Number of B-withdrawals a participant with non-positive multiple-of-B
// balance performs.
std::size_t withdrawals_for(Cents balance, Cents bound);

}  // namespace step

enum class Stage { kSetup, kRounded, kComplete };

struct ParticipantState {
  std::size_t index = 0;
  Cents balance = 0;
  std::vector<std::string> addresses;
};

class ProtocolRun {
 public:
  Variant variant() const { return variant_; }
  Stage stage() const { return stage_; }
  Cents bound_b() const { return bound_b_; }
  Cents quantum() const { return quantum_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t participants() const { return initial_.size(); }
  const BalanceVector& initial_balances() const { return initial_; }

  // Current balances; for physical variants these include envelope moves.
  BalanceVector balances() const;
  std::vector<ParticipantState> states() const;

  const Ledger& ledger() const { return ledger_; }
  const std::vector<Transaction>& trace() const { return ledger_.transactions(); }
  const std::optional<PhysicalOutcome>& physical() const { return physical_; }

  // Ledger transactions; room visits are counted separately.
  std::size_t transaction_count() const { return trace().size(); }
  Cents max_amount() const;
  // The first ring amount, in cents.
  std::optional<Cents> t1() const { return t1_; }

 private:
  friend ProtocolRun setup_from_balances(BalanceVector, Cents, Variant,
                                         std::uint64_t, Cents,
                                         std::optional<Cents>);
  friend void run_round1_slow(ProtocolRun&);
  friend void run_round2_and_3_slow(ProtocolRun&);
  friend void run_merged_fast(ProtocolRun&);
  friend void run_recovery_fast(ProtocolRun&);
  friend void run_physical_phase(ProtocolRun&);

  explicit ProtocolRun(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  void withdraw_all(RoundTag tag);

  Variant variant_ = Variant::kSlow;
  Stage stage_ = Stage::kSetup;
  Cents bound_b_ = 0;
  Cents quantum_ = 1;
  BalanceVector initial_;
  Ledger ledger_;
  Rng rng_;
  std::uint64_t seed_ = 0;
  std::optional<Cents> forced_t1_;
  std::optional<Cents> t1_;
  std::vector<std::vector<std::string>> addresses_;
  std::optional<PhysicalOutcome> physical_;
};

// Validates the instance and prepares a run. `forced_t1` (cents) pins the
// first random draw; it exists for golden tests and voids privacy.
// Throws InvalidInput on: fewer than 3 participants, non-zero-sum balances,
// amounts that are not multiples of the quantum, or a debt above the bound
// ("bound B too small"; the fast variants need debts strictly below B).
ProtocolRun setup_from_balances(BalanceVector balances, Cents bound_b,
                                Variant variant, std::uint64_t seed,
                                Cents quantum = 1,
                                std::optional<Cents> forced_t1 = std::nullopt);

ProtocolRun setup(const ExpenseScenario& scenario, Variant variant,
                  std::optional<Cents> forced_t1 = std::nullopt);

void run_round1_slow(ProtocolRun& run);
void run_round2_and_3_slow(ProtocolRun& run);
void run_merged_fast(ProtocolRun& run);
void run_recovery_fast(ProtocolRun& run);
// Envelope phase of the physical variants (after the private round).
void run_physical_phase(ProtocolRun& run);

// Runs every stage of `run` and checks final zero balances, the exact
// transaction count and the per-transaction amount bounds.
void run_to_completion(ProtocolRun& run);

ProtocolRun run_full(const ExpenseScenario& scenario, Variant variant,
                     std::optional<Cents> forced_t1 = std::nullopt);

}  // namespace santa

#endif  // SANTA_PROTOCOL_HPP_
