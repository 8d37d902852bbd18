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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Detail lines start with two spaces.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "santa/audit.hpp"
#include "santa/physical.hpp"
#include "santa/protocol.hpp"
#include "santa/sep.hpp"

using namespace santa;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExpenseScenario dinner() {
  ExpenseScenario s;
  s.participants = {"Jannik", "Jean-Guillaume", "Pascal"};
  s.groups.push_back({{0, 1, 2}, {{0, 15500}, {1, 5200}, {2, 21300}}});
  return s;
}

ExpenseScenario conference(Cents quantum) {
  ExpenseScenario s = dinner();
  s.participants.push_back("Xavier");
  s.groups.push_back({{0, 1, 3}, {{1, 6000}}});
  s.bound_b = 5000;
  s.quantum = quantum;
  s.seed = 2016;
  return s;
}

std::vector<Cents> private_amounts(const ProtocolRun& run) {
  std::vector<Cents> out;
  for (const auto& tx : run.trace())
    if (tx.kind == ChannelKind::kPrivate) out.push_back(tx.amount);
  return out;
}

struct PublicSummary {
  std::vector<Cents> deposits;
  std::vector<Cents> withdrawals;
  std::vector<std::size_t> withdrawals_by;
};

PublicSummary public_summary(const ProtocolRun& run) {
  PublicSummary s;
  s.withdrawals_by.assign(run.participants(), 0);
  for (const auto& tx : run.trace()) {
    if (tx.kind != ChannelKind::kPublicAnonymous) continue;
    if (tx.piggy == PiggyDirection::kToPiggy) {
      s.deposits.push_back(tx.amount);
    } else {
      s.withdrawals.push_back(tx.amount);
      ++s.withdrawals_by[*run.ledger().token_owner(tx.token)];
    }
  }
  return s;
}

bool plan_is(const SettlementPlan& plan, std::size_t from, std::vector<Cents> amounts) {
  if (plan.size() != amounts.size()) return false;
  std::vector<Cents> got;
  for (const auto& t : plan.transfers) {
    if (t.from != from) return false;
    got.push_back(t.amount);
  }
  std::sort(got.begin(), got.end());
  std::sort(amounts.begin(), amounts.end());
  return got == amounts;
}

void criterion1() {
  const auto start = Clock::now();
  const auto bal = aggregate_balances(dinner());
  const auto greedy = greedy_settle(bal);
  const auto exact = min_transactions(bal);
  const double ms = seconds_since(start) * 1e3;
  const bool ok = bal == BalanceVector{-1500, 8800, -7300} &&
                  plan_is(greedy, 1, {1500, 7300}) && exact.count == 2 &&
                  plan_is(exact.plan, 1, {1500, 7300}) && ms < 1.0;
  report(1, ok, fmt("dinner balances, greedy and exact plans (%.3f ms)", ms));
}

void criterion2() {
  const auto bal = aggregate_balances(conference(1));
  report(2, bal == BalanceVector{500, 4800, -7300, 2000}, "taxi group added");
}

void criterion3() {
  auto run = setup(conference(1), Variant::kSlow, Cents{1200});
  run_round1_slow(run);
  const auto after_round1 = run.balances();
  run_round2_and_3_slow(run);
  const auto pub = public_summary(run);
  const bool ok = private_amounts(run) == std::vector<Cents>{1200, 1000, 3700, 700} &&
                  after_round1 == BalanceVector{0, 5000, -10000, 5000} &&
                  pub.deposits == std::vector<Cents>(4, 5000) &&
                  pub.withdrawals == std::vector<Cents>(4, 5000) &&
                  pub.withdrawals_by == std::vector<std::size_t>{1, 0, 3, 0} &&
                  run.transaction_count() == 12 && run.balances() == BalanceVector(4, 0);
  report(3, ok, "slow golden trace, t1 = 1200");
}

void criterion4() {
  // Amounts in whole euros: one protocol unit is 100 cents.
  const auto run = run_full(conference(100), Variant::kFast, Cents{1100});
  const auto pub = public_summary(run);
  const bool ok = private_amounts(run) == std::vector<Cents>{1200, 6000, 13700, 15700} &&
                  pub.deposits == std::vector<Cents>{20000} &&
                  pub.withdrawals == std::vector<Cents>(4, 5000) &&
                  pub.withdrawals_by == std::vector<std::size_t>{1, 0, 3, 0} &&
                  run.transaction_count() == 9 && run.balances() == BalanceVector(4, 0);
  report(4, ok, "fast golden trace, t1 = 1100 at 100-cent units");
}

void criterion5() {
  const auto start = Clock::now();
  std::mt19937_64 gen(5);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + gen() % 6;
    const Cents bound = 2 + static_cast<Cents>(gen() % 10000);
    const auto p = oracle::random_balances(gen, n, bound - 1);
    for (Variant v : {Variant::kSlow, Variant::kFast}) {
      auto run = setup_from_balances(p, bound, v, gen());
      run_to_completion(run);
      bool ok = run.balances() == BalanceVector(n, 0) &&
                run.transaction_count() == (v == Variant::kSlow ? 3 * n : 2 * n + 1);
      const auto amounts = private_amounts(run);
      for (std::size_t k = 0; k < amounts.size(); ++k) {
        const Cents lo = v == Variant::kSlow ? 1 : static_cast<Cents>(k) * bound + 1;
        const Cents hi = v == Variant::kSlow ? bound : static_cast<Cents>(k + 1) * bound;
        ok = ok && amounts[k] >= lo && amounts[k] <= hi;
      }
      if (!ok) ++bad;
    }
  }
  const double s = seconds_since(start);
  report(5, bad == 0 && s < 10.0,
         fmt("1000 scenarios x 2 variants, %zu failures (%.2f s)", bad, s));
}

// Nondecreasing zero-sum sequences of length len with entries in [lo, hi].
void for_each_multiset(std::size_t len, Cents lo, Cents hi,
                       const std::function<void(const BalanceVector&)>& fn) {
  BalanceVector cur;
  std::function<void(Cents, Cents)> rec = [&](Cents min_next, Cents sum) {
    const auto left = static_cast<Cents>(len - cur.size());
    if (left == 0) {
      if (sum == 0) fn(cur);
      return;
    }
    for (Cents v = min_next; v <= hi; ++v) {
      // the remaining entries are all >= v and <= hi
      if (sum + v * left > 0 || sum + v + hi * (left - 1) < 0) continue;
      cur.push_back(v);
      rec(v, sum + v);
      cur.pop_back();
    }
  };
  rec(lo, 0);
}

void criterion6() {
  const auto start = Clock::now();
  oracle::MinTransfers brute;
  std::mt19937_64 gen(6);
  std::size_t cases = 0, mismatches = 0;
  auto check = [&](BalanceVector p) {
    ++cases;
    const int expect = brute(p);
    std::shuffle(p.begin(), p.end(), gen);  // solver sees a random ordering
    const auto exact = min_transactions(p);
    const auto greedy = greedy_settle(p);
    if (static_cast<int>(exact.count) != expect || exact.count > greedy.size() ||
        apply_plan(p, exact.plan) != BalanceVector(p.size(), 0))
      ++mismatches;
  };
  for (std::size_t len = 1; len <= 8; ++len) for_each_multiset(len, -5, 5, check);
  const std::size_t exhaustive = cases;
  std::uniform_int_distribution<Cents> entry(-5, 5);
  for (int k = 0; k < 500; ++k) {
    BalanceVector p(10);
    for (;;) {
      Cents sum = 0;
      for (std::size_t i = 0; i + 1 < 10; ++i) sum += p[i] = entry(gen);
      if (sum >= -5 && sum <= 5) {
        p[9] = -sum;
        break;
      }
    }
    check(p);
  }
  const double s = seconds_since(start);
  report(6, mismatches == 0,
         fmt("%zu multisets (exhaustive, length <= 8) + 500 random length-10, "
             "%zu mismatches (%.2f s)",
             exhaustive, mismatches, s));
}

void criterion7() {
  const auto start = Clock::now();
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> entry(-6, 6);
  std::size_t mismatches = 0, yes = 0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<std::int64_t> values(1 + gen() % 12);
    for (auto& v : values) v = entry(gen);
    const bool expect = oracle::ssp_brute_force(values);
    const auto reduced = reduce_ssp_to_sep(values);
    const bool got = reduced.answer_yes || sep_decision(reduced.instance);
    if (got != expect) ++mismatches;
    if (expect) ++yes;
  }
  report(7, mismatches == 0,
         fmt("10000 samples (%zu yes), %zu mismatches (%.2f s)", yes, mismatches,
             seconds_since(start)));
}

void criterion8() {
  const BalanceVector p{3, 4, -9, 2};
  const Cents bound = 10;
  const std::uint64_t trials = 100000;
  bool tv_ok = true;
  double worst_ratio = 1e300;
  for (Variant v : {Variant::kSlow, Variant::kFast}) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto r = audit_participant(p, bound, v, i, trials,
                                      derive_seed(is_fast(v) ? 802 : 801, i));
      const double ratio = r.threshold / r.noise_floor;
      worst_ratio = std::min(worst_ratio, ratio);
      tv_ok = tv_ok && r.pass;
      std::printf("  %-4s P%zu: tv %.5f  noise floor %.5f  threshold/noise %.2f\n",
                  std::string(to_string(v)).c_str(), i + 1, r.tv_distance, r.noise_floor, ratio);
    }
    const double s = seconds_since(start);
    tv_ok = tv_ok && s < 60.0;
    std::printf("  %s: %.1f s\n", std::string(to_string(v)).c_str(), s);
  }
  const bool margin_ok = worst_ratio >= 5.0;
  report(8, tv_ok && margin_ok,
         fmt("tv < 0.02 in all 8 configurations: %s; threshold >= 5x noise floor: %s "
             "(worst ratio %.2f)",
             tv_ok ? "yes" : "no", margin_ok ? "yes" : "no", worst_ratio));
}

void criterion9() {
  const BalanceVector p{3, 4, -9, 2};
  const Cents bound = 10;
  std::vector<std::vector<std::uint64_t>> counts(p.size(),
                                                 std::vector<std::uint64_t>(bound, 0));
  for (std::uint64_t k = 0; k < 100000; ++k) {
    auto run = setup_from_balances(p, bound, Variant::kSlow, derive_seed(900, k));
    run_to_completion(run);
    for (const auto& tx : run.trace())
      if (tx.kind == ChannelKind::kPrivate) ++counts[*tx.receiver][tx.amount - 1];
  }
  bool ok = true;
  std::string detail;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double pv = uniform_chi_square_p_value(counts[i]);
    ok = ok && pv > 0.001;
    detail += fmt("P%zu p=%.4f ", i + 1, pv);
  }
  report(9, ok, detail);
}

BalanceVector random_rounded(std::mt19937_64& gen, std::size_t n, Cents bound) {
  auto run = setup_from_balances(oracle::random_balances(gen, n, bound), bound,
                                 Variant::kSlow, gen());
  run_round1_slow(run);
  return run.balances();
}

void criterion10() {
  std::mt19937_64 gen(10);
  std::size_t unequal = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + gen() % 6;
    const Cents bound = 2 + static_cast<Cents>(gen() % 1000);
    const auto a = oracle::random_balances(gen, n, bound - 1);
    const auto b = oracle::random_balances(gen, n, bound - 1);
    for (Variant v : {Variant::kPhysicalSlow, Variant::kPhysicalFast}) {
      auto ra = setup_from_balances(a, bound, v, gen());
      auto rb = setup_from_balances(b, bound, v, gen());
      run_to_completion(ra);
      run_to_completion(rb);
      if (ra.physical()->trace != rb.physical()->trace) ++unequal;
    }
    const auto sa = run_physical_round2_simplified(random_rounded(gen, n, bound), bound);
    const auto sb = run_physical_round2_simplified(random_rounded(gen, n, bound), bound);
    if (sa.trace != sb.trace) ++unequal;
  }
  report(10, unequal == 0,
         fmt("100 pairs x 3 physical variants, %zu unequal traces", unequal));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion9();
  criterion10();
  criterion8();
  std::printf("%d of 10 criteria failed (%.1f s)\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
