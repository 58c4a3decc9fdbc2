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

#include <cstddef>
#include <vector>

#include "linsample/oracle.hpp"

namespace linsample {

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  Weight w = 0.0;
};

/// Undirected weighted edge list on vertices 0..n-1. Missing pairs weigh 0.
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;

  Weight total_weight() const;
  /// Throws kInvalidArgument on a self-loop, an out-of-range endpoint, a
  /// negative weight or a repeated pair.
  void validate() const;
};

/// Dense symmetric weight table (strict upper triangle).
class DenseWeights {
 public:
  explicit DenseWeights(std::size_t n) : n_(n), upper_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  /// Reads every pair of `instance` with a private ledger.
  static DenseWeights from_instance(const MetricInstance& instance);
  static DenseWeights from_graph(const WeightedGraph& graph);

  std::size_t size() const { return n_; }
  Weight operator()(std::size_t u, std::size_t v) const {
    if (u == v) return 0.0;
    if (u > v) std::swap(u, v);
    return upper_[triangle_index(n_, u, v)];
  }
  void set(std::size_t u, std::size_t v, Weight w) {
    if (u > v) std::swap(u, v);
    upper_[triangle_index(n_, u, v)] = w;
  }
  Weight total() const;

 private:
  std::size_t n_;
  std::vector<Weight> upper_;
};

}  // namespace linsample
