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

/// \file sampler.hpp
/// \brief Linear sampling: H^alpha, H^beta and the average-weight estimators.
///
/// In H^alpha every edge e is kept independently. If alpha * w_e > 1 it is
/// always kept with weight alpha * w_e; otherwise it is kept with probability
/// alpha * w_e and weight 1. So the stored weight Y_e satisfies
/// E[Y_e] = alpha * w_e.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linsample/decompose.hpp"
#include "linsample/graph.hpp"
#include "linsample/oracle.hpp"
#include "linsample/rng.hpp"

namespace linsample {

struct SampledGraph {
  std::size_t n = 0;
  double alpha = 0.0;  ///< 0 for a uniform sample (original weights)
  std::optional<double> beta;
  std::vector<WeightedEdge> edges;  ///< sorted by (u, v), u < v
  std::uint64_t queries_used = 0;
  std::uint64_t seed = 0;

  Weight total_weight() const;
  WeightedGraph as_graph() const { return WeightedGraph{n, edges}; }
};

struct SamplerConfig {
  std::optional<double> beta;
  std::optional<double> alpha;
  double epsilon = 0.1;
  double gamma = 2.0;
  DecompositionConstants constants;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Levels for a scaled-weight bound M: max(2, ceil(log2 n + log2 max(M, 2))).
std::size_t level_count(std::size_t n, double max_scaled_weight);

/// w' = sum over the first ceil(1/lambda) vertices v of sum_u w(u,v),
/// divided by 2 C(n,2). Satisfies wbar / (2n) <= w' <= wbar.
Weight crude_average_estimate(const MetricInstance& instance, QueryLedger& ledger);

/// H^alpha. `max_scaled_weight` bounds max_e alpha * w_e and fixes the level
/// count; when absent alpha * L is used.
SampledGraph build_h_alpha(const MetricInstance& instance, double alpha,
                           const DecompositionConstants& constants, Rng& rng,
                           QueryLedger& ledger,
                           std::optional<double> max_scaled_weight = std::nullopt);

/// H^alpha over a decomposition that is already built. Only the edge reads
/// are charged; edges cached by exhaustive levels cost nothing.
SampledGraph sample_with_decomposition(const MetricInstance& instance, double alpha,
                                       const Decomposition& decomposition, Rng& rng,
                                       QueryLedger& ledger);

struct AverageEstimate {
  Weight value = 0.0;
  bool degenerate = false;  ///< instance is identically zero
  double alpha = 0.0;
  std::uint64_t queries = 0;
};

/// (1 +- epsilon) estimate of the average edge weight.
AverageEstimate refine_average_estimate(const MetricInstance& instance, double epsilon,
                                        const DecompositionConstants& constants, Rng& rng,
                                        QueryLedger& ledger);

/// H^beta: beta <= E[sum of stored weights] <= gamma * beta. Uses
/// config.beta, or config.alpha directly when no beta is given.
SampledGraph build_h_beta(const MetricInstance& instance, const SamplerConfig& config,
                          Rng& rng, QueryLedger& ledger);

/// Every edge kept with probability p and its original weight.
SampledGraph uniform_sample(const MetricInstance& instance, double p, Rng& rng,
                            QueryLedger& ledger);

/// sum w' / (alpha C(n,2)); 0 for an empty H.
Weight estimate_average_from_h(const SampledGraph& h);

/// CSV `u,v,weight` plus the JSON sidecar {n, alpha, beta, queries_used, seed}.
void write_sampled_graph(const SampledGraph& h, const std::string& csv_path,
                         const std::string& sidecar_path);
std::string sampled_graph_sidecar(const SampledGraph& h);
SampledGraph read_sampled_graph(const std::string& csv_path, const std::string& sidecar_path);

}  // namespace linsample
