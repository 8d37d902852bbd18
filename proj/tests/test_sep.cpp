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

#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "santa/sep.hpp"

using namespace santa;

namespace {

ExpenseScenario dinner() {
  ExpenseScenario s;
  s.participants = {"Jannik", "Jean-Guillaume", "Pascal"};
  s.groups.push_back({{0, 1, 2}, {{0, 15500}, {1, 5200}, {2, 21300}}});
  return s;
}

ExpenseScenario dinner_and_taxi() {
  ExpenseScenario s = dinner();
  s.participants.push_back("Xavier");
  s.groups.push_back({{0, 1, 3}, {{1, 6000}}});
  return s;
}

}  // namespace

TEST_CASE("aggregate_balances reproduces the conference dinner") {
  CHECK(aggregate_balances(dinner()) == BalanceVector{-1500, 8800, -7300});
}

TEST_CASE("aggregate_balances adds the taxi group") {
  CHECK(aggregate_balances(dinner_and_taxi()) == BalanceVector{500, 4800, -7300, 2000});
}

TEST_CASE("aggregate_balances edge cases") {
  ExpenseScenario s;
  s.participants = {"a", "b"};
  s.groups.push_back({{0, 1}, {}});
  CHECK(aggregate_balances(s) == BalanceVector{0, 0});

  ExpenseScenario uneven;
  uneven.participants = {"a", "b", "c"};
  uneven.groups.push_back({{0, 1, 2}, {{0, 100}}});
  // shares 34/33/33, remainder cent to the lowest index
  CHECK(aggregate_balances(uneven) == BalanceVector{-66, 33, 33});
}

TEST_CASE("aggregate_balances rejects invalid scenarios") {
  ExpenseScenario s;
  s.participants = {"a", "b", "c"};
  s.groups.push_back({{0, 1}, {{2, 100}}});
  CHECK_THROWS_AS(aggregate_balances(s), InvalidInput);

  s.groups = {{{0, 1}, {{0, -5}}}};
  CHECK_THROWS_AS(aggregate_balances(s), InvalidInput);

  s.groups = {{{0, 7}, {}}};
  CHECK_THROWS_AS(aggregate_balances(s), InvalidInput);
}

TEST_CASE("aggregate_balances sums to zero on random scenarios") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    ExpenseScenario s;
    const std::size_t n = 2 + gen() % 8;
    for (std::size_t i = 0; i < n; ++i) s.participants.push_back("p" + std::to_string(i));
    const std::size_t groups = 1 + gen() % 4;
    for (std::size_t g = 0; g < groups; ++g) {
      ExpenseGroup group;
      for (std::size_t i = 0; i < n; ++i)
        if (gen() % 2) group.members.push_back(i);
      if (group.members.empty()) group.members.push_back(gen() % n);
      const std::size_t pays = gen() % 4;
      for (std::size_t k = 0; k < pays; ++k) {
        group.payments.push_back({group.members[gen() % group.members.size()],
                                  static_cast<Cents>(gen() % 100000)});
      }
      s.groups.push_back(group);
    }
    const auto b = aggregate_balances(s);
    REQUIRE(is_zero_sum(b));
  }
}

TEST_CASE("greedy_settle examples") {
  const BalanceVector ex1{-1500, 8800, -7300};
  CHECK(greedy_settle(ex1).transfers ==
        std::vector<Transfer>{{1, 2, 7300}, {1, 0, 1500}});

  CHECK(greedy_settle(BalanceVector{0, 0, 0}).size() == 0);

  const BalanceVector ex2{500, 4800, -7300, 2000};
  CHECK(greedy_settle(ex2).transfers ==
        std::vector<Transfer>{{1, 2, 4800}, {3, 2, 2000}, {0, 2, 500}});

  CHECK_THROWS_AS(greedy_settle(BalanceVector{1, 2}), InvalidInput);
}

TEST_CASE("min_transactions examples") {
  const auto ex1 = min_transactions(BalanceVector{-1500, 8800, -7300});
  CHECK(ex1.count == 2);
  CHECK(apply_plan({-1500, 8800, -7300}, ex1.plan) == BalanceVector{0, 0, 0});

  const auto zeros = min_transactions(BalanceVector{0, 0, 0});
  CHECK(zeros.count == 0);
  CHECK(zeros.plan.size() == 0);

  const BalanceVector split{5, -5, 7, -7};
  oracle::MinTransfers brute;
  REQUIRE(brute({5, -5, 7, -7}) == 2);
  CHECK(min_transactions(split).count == 2);

  CHECK_THROWS_WITH_AS(min_transactions(BalanceVector(21, 0)),
                       "instance too large for exact solver", InvalidInput);
  CHECK_NOTHROW(min_transactions(BalanceVector(20, 0)));
}

TEST_CASE("min_transactions handles the full exhaustive scale") {
  BalanceVector v;
  for (int k = 1; k <= 10; ++k) {
    v.push_back(k);
    v.push_back(-k);
  }
  const auto exact = min_transactions(v);
  CHECK(exact.count == 10);
  CHECK(apply_plan(v, exact.plan) == BalanceVector(20, 0));
}

TEST_CASE("sep_decision examples") {
  CHECK(sep_decision(BalanceVector{5, -5, 7, -7}));
  CHECK_FALSE(sep_decision(BalanceVector{-1500, 8800, -7300}));
  CHECK(sep_decision(BalanceVector{0, 0, 0}));
}

TEST_CASE("reduce_ssp_to_sep examples") {
  const std::vector<std::int64_t> zero{1, 2, -3};
  CHECK(reduce_ssp_to_sep(zero).answer_yes);

  const std::vector<std::int64_t> no{1, 2};
  const auto r = reduce_ssp_to_sep(no);
  REQUIRE_FALSE(r.answer_yes);
  CHECK(r.instance == BalanceVector{1, 2, -3});
  CHECK_FALSE(sep_decision(r.instance));
  CHECK_FALSE(oracle::ssp_brute_force({1, 2}));

  const std::vector<std::int64_t> yes{3, -3, 5};
  const auto r2 = reduce_ssp_to_sep(yes);
  CHECK(r2.instance == BalanceVector{3, -3, 5, -5});
  CHECK(sep_decision(r2.instance));
  CHECK(oracle::ssp_brute_force({3, -3, 5}));
}

TEST_CASE("settlement properties on random zero-sum vectors") {
  std::mt19937_64 gen(42);
  oracle::MinTransfers brute;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    BalanceVector v(n);
    Cents sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      v[i] = static_cast<Cents>(gen() % 13) - 6;
      sum += v[i];
    }
    v[n - 1] = -sum;
    const auto nonzero = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](Cents x) { return x != 0; }));

    const auto greedy = greedy_settle(v);
    REQUIRE(apply_plan(v, greedy) == BalanceVector(n, 0));
    REQUIRE(greedy.size() <= (nonzero == 0 ? 0 : nonzero - 1));
    for (const auto& t : greedy.transfers) REQUIRE(t.amount > 0);

    const auto exact = min_transactions(v);
    REQUIRE(apply_plan(v, exact.plan) == BalanceVector(n, 0));
    REQUIRE(exact.count <= greedy.size());
    REQUIRE(static_cast<int>(exact.count) == brute(v));

    // Order of participants does not matter.
    BalanceVector shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    REQUIRE(min_transactions(shuffled).count == exact.count);
  }
}

TEST_CASE("reduction agrees with subset-sum brute force") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + gen() % 10;
    std::vector<std::int64_t> values(n);
    for (auto& x : values) x = static_cast<std::int64_t>(gen() % 21) - 10;
    REQUIRE(ssp_via_sep(values) == oracle::ssp_brute_force(values));
  }
}
