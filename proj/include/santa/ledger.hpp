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

// Simulated payment fabric. Two channel kinds: private pairwise channels,
// seen only by their two endpoints, and an anonymous public ledger holding
// one shared piggy-bank address. Public events carry opaque address tokens;
// which participant owns a token is kept in an audit-only side table.

#ifndef SANTA_LEDGER_HPP_
#define SANTA_LEDGER_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "santa/types.hpp"

namespace santa {

enum class ChannelKind { kPrivate, kPublicAnonymous };
enum class RoundTag { kRound1, kMerged, kPiggyDeposit, kPiggyWithdraw };
enum class Direction { kSent, kReceived };
enum class PiggyDirection { kToPiggy, kFromPiggy };

std::string_view to_string(ChannelKind kind);
std::string_view to_string(RoundTag tag);
std::string_view to_string(Direction dir);
std::string_view to_string(PiggyDirection dir);

// One money movement as executed. For public transactions `sender` (deposit)
// or `receiver` (withdrawal) is the true owner, known only to the audit
// table; `token` is what everybody sees.
struct Transaction {
  ChannelKind kind = ChannelKind::kPrivate;
  RoundTag round = RoundTag::kRound1;
  std::optional<std::size_t> sender;
  std::optional<std::size_t> receiver;
  std::string token;
  PiggyDirection piggy = PiggyDirection::kToPiggy;
  Cents amount = 0;
};

// What the whole world observes of a public transaction.
struct PublicEvent {
  RoundTag round = RoundTag::kPiggyDeposit;
  PiggyDirection direction = PiggyDirection::kToPiggy;
  Cents amount = 0;
  std::string token;

  friend bool operator==(const PublicEvent&, const PublicEvent&) = default;
};

// One value the owner itself sent or received. `token` is set for the
// owner's own public transactions.
struct ViewEvent {
  Direction direction = Direction::kSent;
  ChannelKind kind = ChannelKind::kPrivate;
  Cents amount = 0;
  RoundTag round = RoundTag::kRound1;
  std::string token;

  friend bool operator==(const ViewEvent&, const ViewEvent&) = default;
};

struct View {
  std::size_t owner = 0;
  std::vector<ViewEvent> events;
  std::vector<PublicEvent> public_log;
};

class Ledger {
 public:
  Ledger() = default;
  explicit Ledger(BalanceVector balances);

  std::size_t participants() const { return balances_.size(); }
  const BalanceVector& balances() const { return balances_; }
  Cents balance(std::size_t i) const { return balances_.at(i); }
  Cents piggy_balance() const { return piggy_; }
  const std::map<std::string, Cents>& address_balances() const {
    return address_balances_;
  }

  // Committed transactions, in the order they are published: private ones
  // in execution order, public ones as shuffled when their round closed.
  const std::vector<Transaction>& transactions() const { return log_; }
  std::vector<PublicEvent> public_log() const;
  std::vector<Transaction> private_log(std::size_t i) const;

  // Audit-only: owner of a public token.
  std::optional<std::size_t> token_owner(const std::string& token) const;

  void private_transfer(std::size_t from, std::size_t to, Cents amount,
                        RoundTag tag);
  // `source` is the fresh address the deposit is paid from.
  void public_deposit(std::size_t from, Cents amount, const std::string& source,
                      RoundTag tag = RoundTag::kPiggyDeposit);
  void public_withdraw(std::size_t to, Cents amount,
                       const std::string& fresh_address,
                       RoundTag tag = RoundTag::kPiggyWithdraw);

  // Publishes the public transactions buffered since the last close, in a
  // seeded random order.
  void close_round(Rng& rng);
  bool has_pending() const { return !pending_.empty(); }

  // Sum of all participant balances plus the piggy bank. Every operation
  // keeps it at its initial value.
  Cents conserved_total() const;

  View extract_view(std::size_t i) const;

 private:
  void check_participant(std::size_t i) const;
  void claim_token(const std::string& token, std::size_t owner);

  BalanceVector balances_;
  Cents piggy_ = 0;
  std::map<std::string, Cents> address_balances_;
  std::map<std::string, std::size_t> token_owner_;
  std::vector<Transaction> log_;
  std::vector<Transaction> pending_;
};

// A fresh 16-hex-digit address token drawn from `rng`.
std::string mint_token(Rng& rng);

}  // namespace santa

#endif  // SANTA_LEDGER_HPP_
