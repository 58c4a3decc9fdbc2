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

#include "linsample/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linsample/error.hpp"
#include "linsample/rng.hpp"

namespace linsample {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kDegenerateInstance: return "degenerate-instance";
    case ErrorCode::kInternalConsistency: return "internal-consistency";
    case ErrorCode::kBudgetExhausted: return "budget-exhausted";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

void QueryLedger::charge() {
  if (budget_ != kUnlimited) {
    std::uint64_t cur = count_.load(std::memory_order_relaxed);
    do {
      if (cur >= budget_) {
        fail(ErrorCode::kBudgetExhausted,
             "query budget of " + std::to_string(budget_) + " exhausted");
      }
    } while (!count_.compare_exchange_weak(cur, cur + 1,
                                           std::memory_order_relaxed));
    return;
  }
  count_.fetch_add(1, std::memory_order_relaxed);
}

MetricInstance::MetricInstance(std::shared_ptr<const MetricBackend> backend,
                               double lambda)
    : backend_(std::move(backend)), lambda_(lambda) {
  require(backend_ != nullptr, "metric backend is null");
  require(lambda_ > 0.0 && lambda_ <= 1.0, "lambda must lie in (0, 1]");
}

std::string MetricInstance::describe() const {
  std::ostringstream os;
  os << backend_->kind() << "(n=" << size() << ", lambda=" << lambda_ << ")";
  return os.str();
}

Weight MetricInstance::query(VertexId u, VertexId v, QueryLedger& ledger) const {
  const std::size_t n = size();
  if (u >= n || v >= n) {
    fail(ErrorCode::kInvalidArgument,
         "vertex out of range: (" + std::to_string(u) + ", " +
             std::to_string(v) + ") with n=" + std::to_string(n));
  }
  if (u == v) {
    fail(ErrorCode::kInvalidArgument,
         "self-pair (" + std::to_string(u) + ", " + std::to_string(u) +
             ") is never a valid query");
  }
  ledger.charge();
  return backend_->weight(u, v);
}

namespace {

class EuclideanBackend final : public MetricBackend {
 public:
  EuclideanBackend(std::vector<double> coords, std::size_t dim)
      : coords_(std::move(coords)), dim_(dim), n_(coords_.size() / dim) {}

  std::size_t size() const override { return n_; }
  std::string kind() const override {
    return "euclidean-d" + std::to_string(dim_);
  }

  Weight weight(VertexId u, VertexId v) const override {
    const double* a = coords_.data() + static_cast<std::size_t>(u) * dim_;
    const double* b = coords_.data() + static_cast<std::size_t>(v) * dim_;
    if (dim_ == 1) return std::fabs(a[0] - b[0]);
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double d = a[k] - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  }

 private:
  std::vector<double> coords_;
  std::size_t dim_;
  std::size_t n_;
};

class MatrixBackend final : public MetricBackend {
 public:
  MatrixBackend(std::size_t n, std::vector<double> upper)
      : n_(n), upper_(std::move(upper)) {}

  std::size_t size() const override { return n_; }
  std::string kind() const override { return "matrix"; }

  Weight weight(VertexId u, VertexId v) const override {
    if (u > v) std::swap(u, v);
    return upper_[triangle_index(n_, u, v)];
  }

 private:
  std::size_t n_;
  std::vector<double> upper_;
};

class HardnessBackend final : public MetricBackend {
 public:
  // hidden < 0 encodes G1.
  HardnessBackend(std::size_t n, long long hidden) : n_(n), hidden_(hidden) {}

  std::size_t size() const override { return n_; }
  std::string kind() const override { return hidden_ < 0 ? "g1" : "g2"; }

  Weight weight(VertexId u, VertexId v) const override {
    if (hidden_ < 0) return 0.0;
    const auto r = static_cast<VertexId>(hidden_);
    return (u == r || v == r) ? 1.0 : 0.0;
  }

 private:
  std::size_t n_;
  long long hidden_;
};

class StarBackend final : public MetricBackend {
 public:
  explicit StarBackend(std::size_t n)
      : n_(n), heavy_(static_cast<double>(n) / 2.0 + 1.0) {}

  std::size_t size() const override { return n_; }
  std::string kind() const override { return "star"; }

  Weight weight(VertexId u, VertexId v) const override {
    return (u == 0 || v == 0) ? heavy_ : 1.0;
  }

 private:
  std::size_t n_;
  double heavy_;
};

class PowerBackend final : public MetricBackend {
 public:
  PowerBackend(std::shared_ptr<const MetricBackend> inner, double p)
      : inner_(std::move(inner)), p_(p) {}

  std::size_t size() const override { return inner_->size(); }
  std::string kind() const override {
    std::ostringstream os;
    os << "pow(" << inner_->kind() << ", " << p_ << ")";
    return os.str();
  }

  Weight weight(VertexId u, VertexId v) const override {
    const Weight w = inner_->weight(u, v);
    if (p_ == 1.0) return w;
    if (p_ == 2.0) return w * w;
    return std::pow(w, p_);
  }

 private:
  std::shared_ptr<const MetricBackend> inner_;
  double p_;
};

}  // namespace

MetricInstance make_euclidean(std::vector<double> coords, std::size_t dim) {
  require(dim >= 1, "dimension must be at least 1");
  require(coords.size() % dim == 0, "coordinate count is not a multiple of dim");
  require(coords.size() / dim >= 2, "a metric instance needs at least 2 points");
  for (double c : coords) require(std::isfinite(c), "non-finite coordinate");
  return MetricInstance(std::make_shared<EuclideanBackend>(std::move(coords), dim),
                        1.0);
}

MetricInstance make_line(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
  return make_euclidean(std::move(xs), 1);
}

MetricInstance make_uniform_points(std::size_t n, std::size_t dim,
                                   std::uint64_t seed) {
  Rng rng = Rng::keyed(seed, 0x706f696e7473ULL);
  std::vector<double> coords(n * dim);
  for (double& c : coords) c = rng.uniform();
  return make_euclidean(std::move(coords), dim);
}

MetricInstance make_matrix(std::size_t n, const std::vector<double>& full,
                           double lambda) {
  require(n >= 2, "matrix instance needs n >= 2");
  require(full.size() == n * n, "matrix must have n*n entries");
  std::vector<double> upper(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = full[i * n + j];
      const double b = full[j * n + i];
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        fail(ErrorCode::kInvalidArgument,
             "matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                 ") is negative or not finite");
      }
      if (std::fabs(a - b) > 1e-9 * std::max(1.0, std::max(a, b))) {
        fail(ErrorCode::kInvalidArgument,
             "matrix is not symmetric at (" + std::to_string(i) + ", " +
                 std::to_string(j) + ")");
      }
      upper[triangle_index(n, i, j)] = a;
    }
  }
  return MetricInstance(std::make_shared<MatrixBackend>(n, std::move(upper)),
                        lambda);
}

std::pair<MetricInstance, MetricInstance> make_hardness_pair(std::size_t n,
                                                             std::uint64_t seed) {
  require(n >= 2, "hardness pair needs n >= 2");
  Rng rng = Rng::keyed(seed, 0x6861726453ULL);
  const auto r = static_cast<long long>(rng.below(n));
  return {MetricInstance(std::make_shared<HardnessBackend>(n, -1), 1.0),
          MetricInstance(std::make_shared<HardnessBackend>(n, r), 1.0)};
}

MetricInstance make_appendix_star(std::size_t n) {
  require(n >= 3, "star instance needs n >= 3");
  return MetricInstance(std::make_shared<StarBackend>(n), 1.0);
}

double power_wrap_lambda(double lambda, double p) {
  double out = lambda / std::pow(2.0, p);
  // (a+b)^p <= 2^(p-1) (a^p + b^p) for p > 1, so 2^(1-p) lambda^p is always
  // valid; lambda / 2^p alone is not when lambda^(p-1) < 1/2.
  if (p > 1.0) out = std::min(out, std::pow(2.0, 1.0 - p) * std::pow(lambda, p));
  return out;
}

MetricInstance power_wrap(const MetricInstance& inner, double p) {
  require(p > 0.0 && std::isfinite(p), "power exponent must be positive");
  return MetricInstance(std::make_shared<PowerBackend>(inner.backend_ptr(), p),
                        power_wrap_lambda(inner.lambda(), p));
}

std::vector<Weight> read_all_weights(const MetricInstance& instance) {
  const std::size_t n = instance.size();
  QueryLedger private_ledger;
  std::vector<Weight> w(n * (n - 1) / 2);
  std::size_t k = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      w[k++] = instance.query(static_cast<VertexId>(u), static_cast<VertexId>(v),
                              private_ledger);
    }
  }
  return w;
}

std::optional<Triple> validate_lambda_metric(const MetricInstance& instance,
                                             const ValidateOptions& options) {
  const std::size_t n = instance.size();
  if (n > options.cap) {
    fail(ErrorCode::kCapExceeded,
         "validate_lambda_metric: n=" + std::to_string(n) + " exceeds cap " +
             std::to_string(options.cap));
  }
  const std::vector<Weight> upper = read_all_weights(instance);
  auto w = [&](std::size_t a, std::size_t b) {
    return a < b ? upper[triangle_index(n, a, b)] : upper[triangle_index(n, b, a)];
  };
  const double lambda = instance.lambda();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      const double wab = w(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (wab + w(b, c) < lambda * w(c, a) - options.tolerance) {
          return Triple{static_cast<VertexId>(a), static_cast<VertexId>(b),
                        static_cast<VertexId>(c)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace linsample
