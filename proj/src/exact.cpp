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

#include "linsample/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "linsample/error.hpp"

namespace linsample {
namespace {

void check_cap(const char* what, std::size_t n, std::size_t cap) {
  if (n > cap) {
    fail(ErrorCode::kCapExceeded, std::string(what) + ": n=" + std::to_string(n) +
                                      " exceeds cap " + std::to_string(cap));
  }
}

bool improves(double value, double best) {
  return value > best + 1e-12 * std::max(1.0, std::abs(best));
}

}  // namespace

Weight exact_average(const MetricInstance& instance) {
  const std::size_t n = instance.size();
  require(n >= 2, "exact_average needs n >= 2");
  const std::vector<Weight> w = read_all_weights(instance);
  return std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
}

SubgraphSelection exact_densest(const DenseWeights& w, std::size_t cap) {
  const std::size_t n = w.size();
  check_cap("exact_densest", n, cap);
  require(n >= 2, "exact_densest needs n >= 2");
  require(n <= 30, "exact_densest supports at most 30 vertices");
  const std::uint32_t full = (std::uint32_t{1} << n);
  // inside[mask]: total weight of pairs inside mask.
  std::vector<double> inside(full, 0.0);
  double best = -1.0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    double s = inside[rest];
    for (std::uint32_t r = rest; r != 0; r &= r - 1) s += w(low, std::countr_zero(r));
    inside[mask] = s;
    const int size = std::popcount(mask);
    if (size < 2) continue;
    const double density = s / size;
    if (improves(density, best)) {
      best = density;
      best_mask = mask;
    }
  }
  SubgraphSelection out;
  for (std::size_t v = 0; v < n; ++v) {
    if (best_mask >> v & 1U) out.vertices.push_back(static_cast<VertexId>(v));
  }
  out.density = subgraph_density(w, out.vertices);
  return out;
}

CutAssignment exact_maxcut(const DenseWeights& w, std::size_t cap) {
  const std::size_t n = w.size();
  check_cap("exact_maxcut", n, cap);
  require(n >= 2, "exact_maxcut needs n >= 2");
  require(n <= 63, "exact_maxcut supports at most 63 vertices");
  // Gray-code walk over vertices 0..n-2; vertex n-1 stays on side 0.
  std::vector<std::uint8_t> side(n, 0);
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  double value = 0.0;
  double best = 0.0;
  std::vector<std::uint8_t> best_side = side;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i));
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      value += side[u] == side[v] ? w(u, v) : -w(u, v);
    }
    side[v] ^= 1U;
    if (improves(value, best)) {
      best = value;
      best_side = side;
    }
  }
  CutAssignment out;
  out.value = cut_value(w, best_side);
  out.side = std::move(best_side);
  return out;
}

namespace {

struct PartitionSearch {
  const DenseWeights& w;
  std::size_t k;
  std::vector<std::uint8_t> used;
  std::vector<std::vector<VertexId>> current;
  std::vector<std::vector<VertexId>> best;
  double best_value = -1.0;

  void run(double value) {
    const std::size_t n = w.size();
    const auto first = std::find(used.begin(), used.end(), 0);
    if (first == used.end()) {
      if (improves(value, best_value)) {
        best_value = value;
        best = current;
      }
      return;
    }
    const auto lead = static_cast<VertexId>(first - used.begin());
    used[lead] = 1;
    current.push_back({lead});
    extend(lead + 1, value, n);
    current.pop_back();
    used[lead] = 0;
  }

  void extend(std::size_t from, double value, std::size_t n) {
    // Indexed, not referenced: run() grows `current` and may reallocate it.
    const std::size_t g = current.size() - 1;
    if (current[g].size() == k) {
      run(value);
      return;
    }
    for (std::size_t v = from; v < n; ++v) {
      if (used[v]) continue;
      double add = 0.0;
      for (VertexId x : current[g]) add += w(x, v);
      used[v] = 1;
      current[g].push_back(static_cast<VertexId>(v));
      extend(v + 1, value + add, n);
      current[g].pop_back();
      used[v] = 0;
    }
  }
};

}  // namespace

HypermatchingPartition exact_hypermatching(const DenseWeights& w, std::size_t k,
                                           std::size_t cap) {
  const std::size_t n = w.size();
  check_cap("exact_hypermatching", n, cap);
  require(k >= 2, "hypermatching needs k >= 2");
  require(n >= k && n % k == 0, "group size k must divide n");
  PartitionSearch search{w, k, std::vector<std::uint8_t>(n, 0), {}, {}, -1.0};
  search.run(0.0);
  HypermatchingPartition out;
  out.groups = std::move(search.best);
  out.value = partition_value(w, out.groups);
  return out;
}

SubgraphSelection exact_densest(const MetricInstance& instance, std::size_t cap) {
  check_cap("exact_densest", instance.size(), cap);
  return exact_densest(DenseWeights::from_instance(instance), cap);
}

SubgraphSelection exact_densest(const WeightedGraph& graph, std::size_t cap) {
  check_cap("exact_densest", graph.n, cap);
  return exact_densest(DenseWeights::from_graph(graph), cap);
}

CutAssignment exact_maxcut(const MetricInstance& instance, std::size_t cap) {
  check_cap("exact_maxcut", instance.size(), cap);
  return exact_maxcut(DenseWeights::from_instance(instance), cap);
}

CutAssignment exact_maxcut(const WeightedGraph& graph, std::size_t cap) {
  check_cap("exact_maxcut", graph.n, cap);
  return exact_maxcut(DenseWeights::from_graph(graph), cap);
}

HypermatchingPartition exact_hypermatching(const MetricInstance& instance, std::size_t k,
                                           std::size_t cap) {
  check_cap("exact_hypermatching", instance.size(), cap);
  return exact_hypermatching(DenseWeights::from_instance(instance), k, cap);
}

HypermatchingPartition exact_hypermatching(const WeightedGraph& graph, std::size_t k,
                                           std::size_t cap) {
  check_cap("exact_hypermatching", graph.n, cap);
  return exact_hypermatching(DenseWeights::from_graph(graph), k, cap);
}

}  // namespace linsample
