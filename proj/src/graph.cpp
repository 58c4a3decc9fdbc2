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

#include "linsample/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "linsample/error.hpp"

namespace linsample {

Weight WeightedGraph::total_weight() const {
  Weight s = 0.0;
  for (const auto& e : edges) s += e.w;
  return s;
}

void WeightedGraph::validate() const {
  std::vector<std::pair<VertexId, VertexId>> keys;
  keys.reserve(edges.size());
  for (const auto& e : edges) {
    require(e.u < n && e.v < n, "edge endpoint out of range");
    require(e.u != e.v, "self-loop at vertex " + std::to_string(e.u));
    require(std::isfinite(e.w) && e.w >= 0.0, "edge weight must be finite and >= 0");
    keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(keys.begin(), keys.end());
  require(std::adjacent_find(keys.begin(), keys.end()) == keys.end(), "repeated edge");
}

DenseWeights DenseWeights::from_instance(const MetricInstance& instance) {
  DenseWeights out(instance.size());
  out.upper_ = read_all_weights(instance);
  return out;
}

DenseWeights DenseWeights::from_graph(const WeightedGraph& graph) {
  DenseWeights out(graph.n);
  for (const auto& e : graph.edges) out.set(e.u, e.v, out(e.u, e.v) + e.w);
  return out;
}

Weight DenseWeights::total() const {
  return std::accumulate(upper_.begin(), upper_.end(), 0.0);
}

}  // namespace linsample
