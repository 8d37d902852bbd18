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

#include "santa/ledger.hpp"

#include <cstdio>
#include <numeric>
#include <utility>

namespace santa {

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::kPrivate ? "private" : "public";
}

std::string_view to_string(RoundTag tag) {
  switch (tag) {
    case RoundTag::kRound1: return "round1";
    case RoundTag::kMerged: return "merged";
    case RoundTag::kPiggyDeposit: return "piggy_deposit";
    case RoundTag::kPiggyWithdraw: return "piggy_withdraw";
  }
  return "?";
}

std::string_view to_string(Direction dir) {
  return dir == Direction::kSent ? "sent" : "received";
}

std::string_view to_string(PiggyDirection dir) {
  return dir == PiggyDirection::kToPiggy ? "to_piggy" : "from_piggy";
}

std::string mint_token(Rng& rng) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(rng.next()));
  return buf;
}

Ledger::Ledger(BalanceVector balances) : balances_(std::move(balances)) {}

void Ledger::check_participant(std::size_t i) const {
  require(i < balances_.size(),
          "unknown participant index " + std::to_string(i));
}

void Ledger::claim_token(const std::string& token, std::size_t owner) {
  require(!token.empty(), "empty address token");
  require(!token_owner_.contains(token), "address token reused: " + token);
  token_owner_.emplace(token, owner);
}

Cents Ledger::conserved_total() const {
  return std::accumulate(balances_.begin(), balances_.end(), Cents{0}) + piggy_;
}

void Ledger::private_transfer(std::size_t from, std::size_t to, Cents amount,
                              RoundTag tag) {
  check_participant(from);
  check_participant(to);
  require(amount > 0, "transfer amount must be positive");
  require(from != to, "transfer to self");
  const Cents before = conserved_total();
  balances_[from] -= amount;
  balances_[to] += amount;
  Transaction tx;
  tx.kind = ChannelKind::kPrivate;
  tx.round = tag;
  tx.sender = from;
  tx.receiver = to;
  tx.amount = amount;
  log_.push_back(std::move(tx));
  ensure(conserved_total() == before, "private_transfer broke conservation");
}

void Ledger::public_deposit(std::size_t from, Cents amount,
                            const std::string& source, RoundTag tag) {
  check_participant(from);
  require(amount > 0, "deposit amount must be positive");
  claim_token(source, from);
  const Cents before = conserved_total();
  balances_[from] -= amount;
  piggy_ += amount;
  Transaction tx;
  tx.kind = ChannelKind::kPublicAnonymous;
  tx.round = tag;
  tx.sender = from;
  tx.token = source;
  tx.piggy = PiggyDirection::kToPiggy;
  tx.amount = amount;
  pending_.push_back(std::move(tx));
  ensure(conserved_total() == before, "public_deposit broke conservation");
}

void Ledger::public_withdraw(std::size_t to, Cents amount,
                             const std::string& fresh_address, RoundTag tag) {
  check_participant(to);
  require(amount > 0, "withdrawal amount must be positive");
  require(amount <= piggy_, "piggy bank overdraw");
  claim_token(fresh_address, to);
  const Cents before = conserved_total();
  piggy_ -= amount;
  balances_[to] += amount;
  address_balances_[fresh_address] += amount;
  Transaction tx;
  tx.kind = ChannelKind::kPublicAnonymous;
  tx.round = tag;
  tx.receiver = to;
  tx.token = fresh_address;
  tx.piggy = PiggyDirection::kFromPiggy;
  tx.amount = amount;
  pending_.push_back(std::move(tx));
  ensure(conserved_total() == before, "public_withdraw broke conservation");
  ensure(piggy_ >= 0, "piggy bank went negative");
}

void Ledger::close_round(Rng& rng) {
  rng.shuffle(pending_.begin(), pending_.end());
  for (auto& tx : pending_) log_.push_back(std::move(tx));
  pending_.clear();
}

std::vector<PublicEvent> Ledger::public_log() const {
  std::vector<PublicEvent> out;
  for (const auto& tx : log_) {
    if (tx.kind != ChannelKind::kPublicAnonymous) continue;
    out.push_back({tx.round, tx.piggy, tx.amount, tx.token});
  }
  return out;
}

std::vector<Transaction> Ledger::private_log(std::size_t i) const {
  check_participant(i);
  std::vector<Transaction> out;
  for (const auto& tx : log_) {
    if (tx.kind == ChannelKind::kPrivate && (tx.sender == i || tx.receiver == i))
      out.push_back(tx);
  }
  return out;
}

std::optional<std::size_t> Ledger::token_owner(const std::string& token) const {
  const auto it = token_owner_.find(token);
  if (it == token_owner_.end()) return std::nullopt;
  return it->second;
}

View Ledger::extract_view(std::size_t i) const {
  check_participant(i);
  require(pending_.empty(), "extract_view: a round is still open");
  View view;
  view.owner = i;
  for (const auto& tx : log_) {
    if (tx.sender == i) {
      view.events.push_back({Direction::kSent, tx.kind, tx.amount, tx.round,
                             tx.kind == ChannelKind::kPrivate ? "" : tx.token});
    } else if (tx.receiver == i) {
      view.events.push_back({Direction::kReceived, tx.kind, tx.amount, tx.round,
                             tx.kind == ChannelKind::kPrivate ? "" : tx.token});
    }
  }
  view.public_log = public_log();
  return view;
}

}  // namespace santa
