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

/// \file oracle.hpp
/// \brief Query-counted edge-weight oracles over lambda-metric point sets.
///
/// A MetricInstance is an immutable, complete weighted graph on vertices
/// 0..n-1 whose weights satisfy w(a,b) + w(b,c) >= lambda * w(c,a). Every
/// weight read goes through MetricInstance::query and is charged to a
/// QueryLedger; self-pairs are never queried.

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace linsample {

using VertexId = std::uint32_t;
using Weight = double;

/// Exact count of weight-oracle invocations. Increments are atomic so one
/// ledger may be shared by concurrent readers of an instance.
class QueryLedger {
 public:
  static constexpr std::uint64_t kUnlimited =
      std::numeric_limits<std::uint64_t>::max();

  QueryLedger() = default;
  /// A ledger that refuses (kBudgetExhausted) any query past `budget`.
  explicit QueryLedger(std::uint64_t budget) : budget_(budget) {}

  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }
  std::uint64_t budget() const { return budget_; }

  /// Records one query; throws before recording if the budget is spent.
  void charge();

  void reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
  std::uint64_t budget_ = kUnlimited;
};

/// Backend interface. `weight` is unmetered and may assume u != v, both in
/// range; MetricInstance performs the checks and the accounting.
class MetricBackend {
 public:
  virtual ~MetricBackend() = default;
  virtual std::size_t size() const = 0;
  virtual Weight weight(VertexId u, VertexId v) const = 0;
  virtual std::string kind() const = 0;
};

class MetricInstance {
 public:
  MetricInstance(std::shared_ptr<const MetricBackend> backend, double lambda);

  std::size_t size() const { return backend_->size(); }
  double lambda() const { return lambda_; }
  const MetricBackend& backend() const { return *backend_; }
  const std::shared_ptr<const MetricBackend>& backend_ptr() const {
    return backend_;
  }
  std::string describe() const;

  /// w(u,v); charges exactly one query to `ledger`.
  Weight query(VertexId u, VertexId v, QueryLedger& ledger) const;

 private:
  std::shared_ptr<const MetricBackend> backend_;
  double lambda_;
};

inline Weight weight_query(const MetricInstance& instance, VertexId u,
                           VertexId v, QueryLedger& ledger) {
  return instance.query(u, v, ledger);
}

// ---------------------------------------------------------------------------
// Backends

/// Points in R^d; distances computed on demand. `coords` is row-major n x d.
MetricInstance make_euclidean(std::vector<double> coords, std::size_t dim);

/// Points 0, 1, ..., n-1 on a line.
MetricInstance make_line(std::size_t n);

/// n points drawn uniformly from the unit cube [0,1]^dim.
MetricInstance make_uniform_points(std::size_t n, std::size_t dim,
                                   std::uint64_t seed);

/// Explicit symmetric matrix given as a full row-major n x n array. Only the
/// strict upper triangle is kept; asymmetry beyond 1e-9 (relative) or a
/// negative entry is rejected. The diagonal is ignored.
MetricInstance make_matrix(std::size_t n, const std::vector<double>& full,
                           double lambda);

/// All-zero graph G1 and the graph G2 whose only non-zero edges (weight 1)
/// touch a hidden vertex r drawn uniformly from `seed`.
std::pair<MetricInstance, MetricInstance> make_hardness_pair(std::size_t n,
                                                             std::uint64_t seed);

/// Vertex 0 joined to everyone by weight n/2 + 1; every other edge weight 1.
MetricInstance make_appendix_star(std::size_t n);

/// weight'(u,v) = weight(u,v)^p. Each wrapped query costs one underlying
/// query.
MetricInstance power_wrap(const MetricInstance& inner, double p);

/// Lambda declared by power_wrap for an inner lambda and exponent p.
double power_wrap_lambda(double lambda, double p);

// ---------------------------------------------------------------------------
// Validation

struct Triple {
  VertexId a, b, c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct ValidateOptions {
  std::size_t cap = 500;
  double tolerance = 1e-9;
};

/// Exhaustive check of w(a,b) + w(b,c) >= lambda * w(c,a) - tolerance over
/// ordered triples. Returns the first violating triple in lexicographic
/// order, or nullopt. Uses a private ledger. n above `cap` -> kCapExceeded.
std::optional<Triple> validate_lambda_metric(const MetricInstance& instance,
                                             const ValidateOptions& options = {});

/// All C(n,2) weights, row-major upper triangle, read with a private ledger.
std::vector<Weight> read_all_weights(const MetricInstance& instance);

/// Index of pair (u,v), u < v, in the row-major strict upper triangle.
inline std::size_t triangle_index(std::size_t n, std::size_t u, std::size_t v) {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

}  // namespace linsample
