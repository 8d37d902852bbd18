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

// Semi-honest privacy audit. For each participant there is a simulator
// that produces that participant's view from its own inputs (n, B, p_i)
// alone, running the participant's real protocol steps against a stand-in
// for everybody else. The audit samples real and simulated views and
// compares the two empirical distributions.

#ifndef SANTA_AUDIT_HPP_
#define SANTA_AUDIT_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "santa/ledger.hpp"
#include "santa/protocol.hpp"
#include "santa/sep.hpp"
#include "santa/types.hpp"

namespace santa {

// What participant i knows before the protocol starts.
struct ParticipantInputs {
  std::size_t n = 0;
  Cents bound_b = 0;
  Cents balance = 0;
};

// `forced_draw` pins the single random value the simulation depends on
// (t_1 for participant 0, the simulated incoming t_{i-1} otherwise), which
// allows exhaustive enumeration of reachable views.
View simulate_view_slow(std::size_t i, const ParticipantInputs& inputs, Rng& rng,
                        std::optional<Cents> forced_draw = std::nullopt);
View simulate_view_fast(std::size_t i, const ParticipantInputs& inputs, Rng& rng,
                        std::optional<Cents> forced_draw = std::nullopt);

// Token identities are replaced by first-appearance ordinals and public
// events are sorted within each round, so two views that differ only in
// fresh-token values or intra-round order map to the same key.
std::string canonicalize(const View& view);

class ViewDistribution {
 public:
  void add(const std::string& key, std::uint64_t count = 1);
  void merge(const ViewDistribution& other);

  std::uint64_t trials() const { return trials_; }
  const std::map<std::string, std::uint64_t>& histogram() const { return hist_; }
  std::size_t support_size() const { return hist_.size(); }

  friend bool operator==(const ViewDistribution&, const ViewDistribution&) = default;

 private:
  std::map<std::string, std::uint64_t> hist_;
  std::uint64_t trials_ = 0;
};

// Trial k runs with seed derive_seed(master_seed, k).
ViewDistribution real_view_distribution(std::span<const Cents> balances,
                                        Cents bound_b, Variant variant,
                                        std::size_t i, std::uint64_t trials,
                                        std::uint64_t master_seed);
ViewDistribution real_view_distribution(const ExpenseScenario& scenario,
                                        Variant variant, std::size_t i,
                                        std::uint64_t trials);
ViewDistribution sim_view_distribution(const ParticipantInputs& inputs,
                                       Variant variant, std::size_t i,
                                       std::uint64_t trials,
                                       std::uint64_t master_seed);

// Half the L1 distance between the empirical frequencies.
double tv_distance(const ViewDistribution& a, const ViewDistribution& b);

// Pearson chi-square goodness of fit against the uniform law on
// counts.size() outcomes; returns the upper-tail p-value.
double uniform_chi_square_p_value(std::span<const std::uint64_t> counts);

inline constexpr double kDefaultTvThreshold = 0.02;

struct AuditReport {
  Variant variant = Variant::kSlow;
  std::size_t participant = 0;
  std::uint64_t trials = 0;
  Cents bound_b = 0;
  std::size_t n = 0;
  double tv_distance = 0.0;
  // Real-vs-real distance between two independent samples of equal size.
  double noise_floor = 0.0;
  double threshold = kDefaultTvThreshold;
  bool pass = false;
};

// Only the cryptocurrency variants are audited statistically.
AuditReport audit_participant(std::span<const Cents> balances, Cents bound_b,
                              Variant variant, std::size_t i,
                              std::uint64_t trials, std::uint64_t seed,
                              double threshold = kDefaultTvThreshold);

}  // namespace santa

#endif  // SANTA_AUDIT_HPP_
