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

// Basic vocabulary shared by every module: money amounts, error types and
// the deterministic random source.

#ifndef SANTA_TYPES_HPP_
#define SANTA_TYPES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace santa {

// Signed amount in euro cents. Settlement math is integer-only.
using Cents = std::int64_t;

// Positive = participant owes money, negative = participant is owed.
using BalanceVector = std::vector<Cents>;

// Raised for malformed scenarios, violated preconditions and bad arguments.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a protocol invariant breaks. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

// Floor modulo: result in [0, m) for m > 0.
constexpr Cents floor_mod(Cents a, Cents m) {
  const Cents r = a % m;
  return r < 0 ? r + m : r;
}

// mt19937_64 plus draw helpers whose output does not depend on the standard
// library implementation, so traces are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [lo, hi], rejection sampled.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InvalidInput("uniform: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % range);
  }

  // Fisher-Yates over [first, last).
  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::int64_t>(last - first);
    for (std::int64_t i = n - 1; i > 0; --i) {
      const auto j = uniform(0, i);
      if (j != i) std::iter_swap(first + i, first + j);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stateless seed derivation: same (master, index) always gives the same seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace santa

#endif  // SANTA_TYPES_HPP_
