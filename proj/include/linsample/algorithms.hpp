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

/// \file algorithms.hpp
/// \brief Solvers that run on a sampled graph, and the sparsify-then-solve
/// pipelines.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linsample/graph.hpp"
#include "linsample/oracle.hpp"
#include "linsample/rng.hpp"
#include "linsample/sampler.hpp"

namespace linsample {

struct SubgraphSelection {
  std::vector<VertexId> vertices;  ///< sorted
  double density = 0.0;            ///< internal weight / |S|; 0 when |S| < 2
};

struct CutAssignment {
  std::vector<std::uint8_t> side;  ///< 0 or 1 per vertex
  double value = 0.0;
};

struct HypermatchingPartition {
  std::vector<std::vector<VertexId>> groups;  ///< each sorted, ordered by first id
  double value = 0.0;
};

// ---------------------------------------------------------------------------
// Objective values

double subgraph_density(const WeightedGraph& g, std::span<const VertexId> vertices);
double cut_value(const WeightedGraph& g, std::span<const std::uint8_t> side);
double partition_value(const WeightedGraph& g,
                       const std::vector<std::vector<VertexId>>& groups);

double subgraph_density(const DenseWeights& w, std::span<const VertexId> vertices);
double cut_value(const DenseWeights& w, std::span<const std::uint8_t> side);
double partition_value(const DenseWeights& w,
                       const std::vector<std::vector<VertexId>>& groups);

/// Values on the instance itself; every pair read is charged to `ledger`.
double evaluate_density(const MetricInstance& instance, std::span<const VertexId> vertices,
                        QueryLedger& ledger);
double evaluate_cut(const MetricInstance& instance, std::span<const std::uint8_t> side,
                    QueryLedger& ledger);
double evaluate_partition(const MetricInstance& instance,
                          const std::vector<std::vector<VertexId>>& groups,
                          QueryLedger& ledger);

// ---------------------------------------------------------------------------
// Solvers

/// Min-degree peeling (ties by smallest id); best prefix of size >= 2.
/// Throws kInvalidArgument "no edges" on an empty edge list.
SubgraphSelection greedy_densest(const WeightedGraph& g);

/// Single-vertex-flip local search from random starts; best of `restarts`.
CutAssignment local_search_maxcut(const WeightedGraph& g, Rng& rng, std::size_t restarts = 8);

/// True when no single flip raises the cut by more than `tolerance`.
bool is_local_optimum(const WeightedGraph& g, std::span<const std::uint8_t> side,
                      double tolerance = 1e-9);

/// Greedy groups seeded by the heaviest free edge, then random swaps until n
/// consecutive attempts fail to improve.
HypermatchingPartition greedy_hypermatching(const WeightedGraph& g, std::size_t k, Rng& rng);

// ---------------------------------------------------------------------------
// Pipelines

enum class ProblemKind { kAverage, kDensest, kMaxCut, kHypermatching };

struct Problem {
  ProblemKind kind = ProblemKind::kAverage;
  std::size_t k = 0;  ///< group size for hypermatching

  /// "avg", "densest", "maxcut", "hypermatching:<k>".
  static Problem parse(std::string_view text);
  std::string name() const;
};

/// Target total sampled weight for a problem (natural logs).
double beta_for(const Problem& problem, std::size_t n, double epsilon);

struct SolveOptions {
  std::size_t maxcut_restarts = 8;
  /// Replaces the tabulated beta (voids the guarantee).
  std::optional<double> beta_override;
};

struct SolveResult {
  Problem problem;
  double epsilon = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  std::size_t sampled_edges = 0;
  double value_in_h = 0.0;      ///< objective on H with sampled weights
  /// Objective re-evaluated on the instance; absent for the average.
  std::optional<double> value_in_g;
  double estimate = 0.0;        ///< value_in_h / alpha (average: the estimate of wbar)
  std::uint64_t queries_algorithm = 0;
  std::uint64_t queries_evaluation = 0;
  std::optional<SubgraphSelection> densest;
  std::optional<CutAssignment> cut;
  std::optional<HypermatchingPartition> matching;

  std::string to_json() const;
};

/// Builds H^beta for the problem's beta, solves on H, re-evaluates on G.
/// Algorithm queries go to `ledger`; re-evaluation uses a separate ledger.
SolveResult sparsify_and_solve(const MetricInstance& instance, const Problem& problem,
                               double epsilon, const SamplerConfig& config, Rng& rng,
                               QueryLedger& ledger, const SolveOptions& options = {});

}  // namespace linsample
