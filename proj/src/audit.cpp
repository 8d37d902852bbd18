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

#include "santa/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace santa {

namespace {

void check_inputs(std::size_t i, const ParticipantInputs& in, bool fast) {
  require(in.n >= kMinParticipants, "a conspiracy needs at least 3 participants");
  require(i < in.n, "participant index out of range");
  require(in.bound_b > 0, "bound B must be positive");
  require(fast ? in.balance < in.bound_b : in.balance <= in.bound_b,
          "bound B too small");
}

// The stand-in acts under the identity of some participant other than i.
std::size_t other_than(std::size_t i, std::size_t n) { return (i + 1) % n; }

void deposit(Ledger& ledger, Rng& rng, std::size_t who, Cents amount) {
  ledger.public_deposit(who, amount, mint_token(rng));
}

void withdraw(Ledger& ledger, Rng& rng, std::size_t who, Cents amount,
              std::size_t times) {
  for (std::size_t k = 0; k < times; ++k) {
    ledger.public_withdraw(who, amount, mint_token(rng));
  }
}

// Participant i withdraws what its own balance dictates; the stand-in
// empties the rest of the piggy bank, n withdrawals in total.
void recover(Ledger& ledger, Rng& rng, std::size_t i, std::size_t n, Cents bound) {
  const std::size_t own = step::withdrawals_for(ledger.balance(i), bound);
  require(own <= n, "inputs outside protocol preconditions");
  withdraw(ledger, rng, i, bound, own);
  withdraw(ledger, rng, other_than(i, n), bound, n - own);
  ledger.close_round(rng);
}

Cents draw(Rng& rng, std::optional<Cents> forced, Cents lo, Cents hi) {
  if (!forced) return rng.uniform(lo, hi);
  require(*forced >= lo && *forced <= hi, "forced draw out of range");
  return *forced;
}

}  // namespace

View simulate_view_slow(std::size_t i, const ParticipantInputs& in, Rng& rng,
                        std::optional<Cents> forced_draw) {
  check_inputs(i, in, false);
  const std::size_t n = in.n;
  const Cents bound = in.bound_b;
  BalanceVector start(n, 0);
  start[i] = in.balance;
  Ledger ledger(start);

  if (i == 0) {
    // Participant 0 draws t_1 itself; the stand-in closes the ring with the
    // unique s in [1, B] that makes its balance a multiple of B.
    const Cents t1 = draw(rng, forced_draw, 1, bound);
    ledger.private_transfer(0, 1, t1, RoundTag::kRound1);
    const Cents reply = bound - floor_mod(ledger.balance(0), bound);
    ledger.private_transfer(n - 1, 0, reply, RoundTag::kRound1);
  } else {
    const Cents incoming = draw(rng, forced_draw, 1, bound);
    ledger.private_transfer(i - 1, i, incoming, RoundTag::kRound1);
    const Cents t = step::slow_relay(ledger.balance(i), bound);
    ledger.private_transfer(i, (i + 1) % n, t, RoundTag::kRound1);
  }

  deposit(ledger, rng, i, bound);
  for (std::size_t k = 1; k < n; ++k) deposit(ledger, rng, other_than(i, n), bound);
  ledger.close_round(rng);
  recover(ledger, rng, i, n, bound);
  return ledger.extract_view(i);
}

View simulate_view_fast(std::size_t i, const ParticipantInputs& in, Rng& rng,
                        std::optional<Cents> forced_draw) {
  check_inputs(i, in, true);
  const std::size_t n = in.n;
  const Cents bound = in.bound_b;
  const Cents pot = static_cast<Cents>(n) * bound;
  BalanceVector start(n, 0);
  start[i] = in.balance;
  Ledger ledger(start);

  if (i == 0) {
    const Cents t1 = draw(rng, forced_draw, 0, bound - 1);
    ledger.private_transfer(0, 1, 1 + t1, RoundTag::kMerged);
    // Reply 1 + t_n + (n-1)B with t_n fixed by the congruence.
    const Cents reply = 1 + floor_mod(-ledger.balance(0) - 1, bound) +
                        static_cast<Cents>(n - 1) * bound;
    ledger.private_transfer(n - 1, 0, reply, RoundTag::kMerged);
    deposit(ledger, rng, 0, pot);
  } else {
    const Cents t_prev = draw(rng, forced_draw, 0, bound - 1);
    ledger.private_transfer(i - 1, i, 1 + t_prev + static_cast<Cents>(i - 1) * bound,
                            RoundTag::kMerged);
    const Cents sent = step::fast_relay(ledger.balance(i), i, bound);
    ledger.private_transfer(i, (i + 1) % n, sent, RoundTag::kMerged);
    deposit(ledger, rng, 0, pot);
  }
  ledger.close_round(rng);
  recover(ledger, rng, i, n, bound);
  return ledger.extract_view(i);
}

std::string canonicalize(const View& view) {
  std::map<std::string, int> ordinal;
  auto ordinal_of = [&](const std::string& token) {
    auto [it, inserted] = ordinal.try_emplace(token, static_cast<int>(ordinal.size()));
    return it->second;
  };

  std::ostringstream out;
  for (const auto& e : view.events) {
    out << to_string(e.direction) << ',' << to_string(e.kind) << ',' << e.amount
        << ',' << to_string(e.round);
    if (!e.token.empty()) out << ",#" << ordinal_of(e.token);
    out << ';';
  }
  out << '|';

  // Own tokens already carry ordinals; foreign tokens sort after them.
  constexpr int kForeign = std::numeric_limits<int>::max();
  using Key = std::tuple<RoundTag, PiggyDirection, Cents, int>;
  std::vector<Key> keys;
  for (const auto& e : view.public_log) {
    const auto it = ordinal.find(e.token);
    keys.emplace_back(e.round, e.direction, e.amount,
                      it == ordinal.end() ? kForeign : it->second);
  }
  std::sort(keys.begin(), keys.end());
  // Foreign tokens are distinct and unseen, so each takes the next ordinal.
  int next = static_cast<int>(ordinal.size());
  for (const auto& [round, dir, amount, own] : keys) {
    const int ord = own == kForeign ? next++ : own;
    out << to_string(round) << ',' << to_string(dir) << ',' << amount << ",#"
        << ord << ';';
  }
  return out.str();
}

void ViewDistribution::add(const std::string& key, std::uint64_t count) {
  hist_[key] += count;
  trials_ += count;
}

void ViewDistribution::merge(const ViewDistribution& other) {
  for (const auto& [key, count] : other.hist_) add(key, count);
}

ViewDistribution real_view_distribution(std::span<const Cents> balances,
                                        Cents bound_b, Variant variant,
                                        std::size_t i, std::uint64_t trials,
                                        std::uint64_t master_seed) {
  require(trials >= 1, "trials must be positive");
  require(!is_physical(variant), "physical variants are not audited statistically");
  require(i < balances.size(), "participant index out of range");
  ViewDistribution dist;
  const BalanceVector start(balances.begin(), balances.end());
  for (std::uint64_t k = 0; k < trials; ++k) {
    ProtocolRun run =
        setup_from_balances(start, bound_b, variant, derive_seed(master_seed, k));
    run_to_completion(run);
    dist.add(canonicalize(run.ledger().extract_view(i)));
  }
  return dist;
}

ViewDistribution real_view_distribution(const ExpenseScenario& scenario,
                                        Variant variant, std::size_t i,
                                        std::uint64_t trials) {
  const BalanceVector balances = aggregate_balances(scenario);
  return real_view_distribution(balances, scenario.bound_b, variant, i, trials,
                                scenario.seed);
}

ViewDistribution sim_view_distribution(const ParticipantInputs& inputs,
                                       Variant variant, std::size_t i,
                                       std::uint64_t trials,
                                       std::uint64_t master_seed) {
  require(trials >= 1, "trials must be positive");
  require(!is_physical(variant), "physical variants are not audited statistically");
  ViewDistribution dist;
  for (std::uint64_t k = 0; k < trials; ++k) {
    Rng rng(derive_seed(master_seed, k));
    const View view = is_fast(variant) ? simulate_view_fast(i, inputs, rng)
                                       : simulate_view_slow(i, inputs, rng);
    dist.add(canonicalize(view));
  }
  return dist;
}

double tv_distance(const ViewDistribution& a, const ViewDistribution& b) {
  require(a.trials() > 0 && b.trials() > 0, "tv_distance: empty distribution");
  const double na = static_cast<double>(a.trials());
  const double nb = static_cast<double>(b.trials());
  double sum = 0.0;
  for (const auto& [key, count] : a.histogram()) {
    const auto it = b.histogram().find(key);
    const double other = it == b.histogram().end() ? 0.0 : static_cast<double>(it->second);
    sum += std::abs(static_cast<double>(count) / na - other / nb);
  }
  for (const auto& [key, count] : b.histogram()) {
    if (!a.histogram().contains(key)) sum += static_cast<double>(count) / nb;
  }
  return 0.5 * sum;
}

double uniform_chi_square_p_value(std::span<const std::uint64_t> counts) {
  require(counts.size() >= 2, "chi-square needs at least two outcomes");
  const double total = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  require(total > 0, "chi-square needs observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

AuditReport audit_participant(std::span<const Cents> balances, Cents bound_b,
                              Variant variant, std::size_t i,
                              std::uint64_t trials, std::uint64_t seed,
                              double threshold) {
  require(i < balances.size(), "participant index out of range");
  AuditReport report;
  report.variant = variant;
  report.participant = i;
  report.trials = trials;
  report.bound_b = bound_b;
  report.n = balances.size();
  report.threshold = threshold;

  const ParticipantInputs inputs{balances.size(), bound_b, balances[i]};
  const auto real = real_view_distribution(balances, bound_b, variant, i, trials,
                                           derive_seed(seed, 0));
  const auto sim = sim_view_distribution(inputs, variant, i, trials,
                                         derive_seed(seed, 1));
  const auto replica = real_view_distribution(balances, bound_b, variant, i,
                                              trials, derive_seed(seed, 2));
  report.tv_distance = tv_distance(real, sim);
  report.noise_floor = tv_distance(real, replica);
  report.pass = report.tv_distance < threshold;
  return report;
}

}  // namespace santa
