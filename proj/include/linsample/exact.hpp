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

/// \file exact.hpp
/// \brief Brute-force reference solvers for small instances. All of them
/// read the instance off-ledger.

#pragma once

#include <cstddef>

#include "linsample/algorithms.hpp"
#include "linsample/graph.hpp"
#include "linsample/oracle.hpp"

namespace linsample {

inline constexpr std::size_t kExactDensestCap = 20;
inline constexpr std::size_t kExactMaxCutCap = 22;
inline constexpr std::size_t kExactHypermatchingCap = 12;

/// Mean weight over all C(n,2) pairs.
Weight exact_average(const MetricInstance& instance);

/// Best density over all subsets of size >= 2 (first maximum in subset-mask
/// order).
SubgraphSelection exact_densest(const DenseWeights& w, std::size_t cap = kExactDensestCap);
SubgraphSelection exact_densest(const MetricInstance& instance,
                                std::size_t cap = kExactDensestCap);
SubgraphSelection exact_densest(const WeightedGraph& graph, std::size_t cap = kExactDensestCap);

/// Best cut over the 2^(n-1) assignments with vertex n-1 on side 0.
CutAssignment exact_maxcut(const DenseWeights& w, std::size_t cap = kExactMaxCutCap);
CutAssignment exact_maxcut(const MetricInstance& instance, std::size_t cap = kExactMaxCutCap);
CutAssignment exact_maxcut(const WeightedGraph& graph, std::size_t cap = kExactMaxCutCap);

/// Best partition into groups of size k.
HypermatchingPartition exact_hypermatching(const DenseWeights& w, std::size_t k,
                                           std::size_t cap = kExactHypermatchingCap);
HypermatchingPartition exact_hypermatching(const MetricInstance& instance, std::size_t k,
                                           std::size_t cap = kExactHypermatchingCap);
HypermatchingPartition exact_hypermatching(const WeightedGraph& graph, std::size_t k,
                                           std::size_t cap = kExactHypermatchingCap);

}  // namespace linsample
