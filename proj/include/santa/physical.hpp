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

// Envelope-and-secure-room settlement. Money moves in opaque envelopes of
// exactly B cents; an outside observer only sees who enters the room, in
// which phase, and how tall the stack is afterwards.

#ifndef SANTA_PHYSICAL_HPP_
#define SANTA_PHYSICAL_HPP_

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "santa/types.hpp"

namespace santa {

enum class Envelope { kMoney, kDummy };

class EnvelopeStack {
 public:
  void push_top(Envelope e) { stack_.push_front(e); }
  // Dummies only ever go underneath.
  void push_dummy_bottom() { stack_.push_back(Envelope::kDummy); }
  // Removes and returns the top k envelopes (top first).
  std::vector<Envelope> take_top(std::size_t k);

  std::size_t height() const { return stack_.size(); }

  // Audit-only: never part of what an observer records.
  std::size_t money_count() const;
  std::vector<Envelope> contents() const { return {stack_.begin(), stack_.end()}; }

 private:
  std::deque<Envelope> stack_;  // front is the top
};

enum class VisitPhase { kDeposit, kCollect };

struct RoomVisit {
  std::size_t visitor = 0;
  VisitPhase phase = VisitPhase::kDeposit;
  std::size_t stack_height = 0;  // after the visit

  friend bool operator==(const RoomVisit&, const RoomVisit&) = default;
};

using RoomTrace = std::vector<RoomVisit>;

struct PhysicalOutcome {
  EnvelopeStack stack;
  RoomTrace trace;
  BalanceVector balances;
  std::size_t money_deposited = 0;
  std::size_t money_withdrawn = 0;
};

// Everybody deposits one money envelope, then each creditor at -k*B takes k
// envelopes from the top and slides k dummies underneath. Input balances
// are the result of the private rounding round.
PhysicalOutcome run_physical_round2(std::span<const Cents> balances, Cents bound_b);

// Debtors (at exactly B) put money on top, everybody else a dummy at the
// bottom; creditors then collect as above.
PhysicalOutcome run_physical_round2_simplified(std::span<const Cents> balances,
                                               Cents bound_b);

// Balances after the merged round, with the first participant already
// charged n*B. That participant deposits n money envelopes, then everyone
// collects.
PhysicalOutcome run_physical_fast(std::span<const Cents> balances, Cents bound_b);

}  // namespace santa

#endif  // SANTA_PHYSICAL_HPP_
