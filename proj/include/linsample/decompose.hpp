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

/// \file decompose.hpp
/// \brief Level decomposition of a lambda-metric graph.
///
/// Starting from an upper bound L on every edge weight, level i keeps the
/// vertex set V_i and the bound L_i = L / 2^(i-1). The set nu_i collects the
/// vertices of V_i with high degree in the graph of edges of weight at least
/// lambda * L_i / 4, and V_(i+1) = V_i \ nu_i. Removing nu_i covers every
/// edge heavier than L_i / 2, so L_(i+1) bounds the edges that remain.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linsample/oracle.hpp"
#include "linsample/rng.hpp"

namespace linsample {

enum class NuMode {
  kAuto,        ///< exhaustive for small V_i, sampling otherwise
  kExhaustive,  ///< always read every pair of V_i
  kSampling,    ///< always sample (requires sampling probability < 1)
};

struct DecompositionConstants {
  static constexpr double kDefaultSample = 384.0;
  static constexpr double kDefaultThreshold = 3.0 / 8.0;

  double c_sample = kDefaultSample;
  double threshold_frac = kDefaultThreshold;
  NuMode mode = NuMode::kAuto;
  /// Largest number of pairs an exhaustive level may keep for reuse.
  std::size_t cache_limit = std::size_t{1} << 23;

  /// False when a constant that the success probability depends on has been
  /// overridden.
  bool guarantee_holds() const {
    return c_sample == kDefaultSample && threshold_frac == kDefaultThreshold &&
           mode == NuMode::kAuto;
  }
  void validate() const;
};

/// Weights of every pair of a vertex set, read once by an exhaustive level
/// and reused by deeper levels (whose vertex sets are subsets).
class PairCache {
 public:
  PairCache(std::size_t n, std::span<const VertexId> vertices);

  bool covers(std::span<const VertexId> vertices) const;
  std::optional<Weight> find(VertexId u, VertexId v) const;
  void store(VertexId u, VertexId v, Weight w);
  std::size_t pair_count() const { return weights_.size(); }

 private:
  std::size_t index(VertexId u, VertexId v) const;

  std::vector<std::int32_t> local_;
  std::size_t m_;
  std::vector<Weight> weights_;
};

struct Level {
  Weight bound = 0.0;                 ///< L_i
  std::vector<VertexId> vertices;     ///< V_i, sorted
  std::vector<VertexId> nu;           ///< nu_i, sorted
  bool exhaustive = false;
  std::uint64_t queries = 0;
};

struct Decomposition {
  Weight L = 0.0;
  std::size_t t = 0;
  std::vector<Level> levels;          ///< levels 1..t-1 (index i-1)
  std::vector<VertexId> residual;     ///< V_t
  Weight residual_bound = 0.0;        ///< L_t
  std::uint64_t queries = 0;          ///< oracle queries spent building
  std::shared_ptr<const PairCache> cache;

  /// L_i = L / 2^(i-1) for 1-based i.
  Weight bound(std::size_t i) const;
  /// Same decomposition cut at t' <= t levels (V_t' becomes the residual).
  Decomposition truncated(std::size_t t_prime) const;

  std::string to_json() const;
  static Decomposition from_json(const std::string& text);
};

/// L = (2 / lambda) * max_u w(u, 0); exactly n-1 queries, and
/// max_e w_e <= L <= (2 / lambda) max_e w_e.
Weight estimate_weight_upper_bound(const MetricInstance& instance,
                                   QueryLedger& ledger);

/// ln n + ln t, the log factor of the sampling rate.
double level_log_factor(std::size_t n, std::size_t t);

struct NuSelection {
  std::vector<VertexId> nu;
  bool exhaustive = false;
};

/// Selects nu_i for level vertex set `vertices` (sorted) and bound `bound`.
/// Exhaustive branch (|V_i| <= 2 c (ln n + ln t)): every pair is read and
/// nu_i = { v : deg(v) >= |V_i| / 4 }. Sampling branch: pairs are sampled
/// with p = c (ln n + ln t) / |V_i| and v joins when at least
/// threshold_frac * c (ln n + ln t) sampled neighbours are heavy.
/// `cache` (optional) is consulted and, on an exhaustive read, replaced.
NuSelection build_nu(const MetricInstance& instance,
                     std::span<const VertexId> vertices, Weight bound,
                     const DecompositionConstants& constants, std::size_t t,
                     Rng& rng, QueryLedger& ledger,
                     std::shared_ptr<const PairCache>* cache = nullptr);

/// Full level sequence for a known upper bound L.
Decomposition build_decomposition(const MetricInstance& instance, Weight L,
                                  std::size_t t,
                                  const DecompositionConstants& constants,
                                  Rng& rng, QueryLedger& ledger);

/// Computes L first (n-1 queries), then the level sequence.
Decomposition build_decomposition(const MetricInstance& instance, std::size_t t,
                                  const DecompositionConstants& constants,
                                  Rng& rng, QueryLedger& ledger);

/// Exact degree of every vertex of `vertices` in the graph of pairs with
/// weight >= lambda * bound / 4 restricted to `vertices`. Off-ledger.
std::vector<std::size_t> threshold_degrees(const MetricInstance& instance,
                                           std::span<const VertexId> vertices,
                                           Weight bound);

}  // namespace linsample
