// Copyright 2026 The linsample Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace linsample {

/// Seeded random stream. Child streams are keyed by (seed, tag...) so that a
/// stage of the pipeline draws the same numbers no matter what ran before it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) { reseed(seed, 0, 0); }

  /// Independent stream for `(seed, a, b)`.
  static Rng keyed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    Rng r(seed);
    r.reseed(seed, a, b);
    // The key is part of the stream identity, so children of two keyed
    // streams with the same base seed differ.
    r.seed_ = mix(mix(mix(seed) ^ a) ^ b);
    return r;
  }

  /// Child stream derived from this stream's seed and a tag; does not advance
  /// the parent.
  Rng child(std::uint64_t a, std::uint64_t b = 0) const {
    return keyed(seed_ ^ 0x9e3779b97f4a7c15ULL, a, b);
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  /// Number of failures before the first success of a Bernoulli(p) sequence.
  std::uint64_t geometric_gap(double p) {
    return std::geometric_distribution<std::uint64_t>(p)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  void reseed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Calls `fn(index)` for every index in [0, count) that survives an
/// independent Bernoulli(p) trial, in increasing order. Work is proportional
/// to the number of successes when p is small.
template <typename Fn>
void for_each_bernoulli_index(std::uint64_t count, double p, Rng& rng, Fn&& fn) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (p > 0.25) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (rng.bernoulli(p)) fn(i);
    }
    return;
  }
  std::uint64_t i = rng.geometric_gap(p);
  while (i < count) {
    fn(i);
    const std::uint64_t gap = rng.geometric_gap(p);
    if (gap >= count - i - 1) break;
    i += gap + 1;
  }
}

}  // namespace linsample
