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

#include "linsample/sampler.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "linsample/error.hpp"
#include "pair_walk.hpp"

namespace linsample {

using internal::choose2;

namespace {

constexpr double kProbabilityTolerance = 1e-12;

// Stream tags; each stage draws from its own child of the caller's stream.
constexpr std::uint64_t kTagSample = 0x73616d706c65ULL;
constexpr std::uint64_t kTagResidual = 0x7265736964ULL;
constexpr std::uint64_t kTagRefine = 0x726566696e65ULL;
constexpr std::uint64_t kTagFinal = 0x66696e616cULL;

double checked_probability(double q, const char* what) {
  if (!(q <= 1.0 + kProbabilityTolerance) || q < 0.0) {
    std::ostringstream os;
    os << what << " probability " << q << " is outside [0, 1]";
    fail(ErrorCode::kInternalConsistency, os.str());
  }
  return std::min(q, 1.0);
}

void sort_edges(std::vector<WeightedEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
}

WeightedEdge ordered(VertexId u, VertexId v, Weight w) {
  return u < v ? WeightedEdge{u, v, w} : WeightedEdge{v, u, w};
}

struct Prelude {
  Weight L = 0.0;
  Weight crude = 0.0;
};

// L and w' together; the pivot row is shared by both.
Prelude read_prelude(const MetricInstance& instance, QueryLedger& ledger) {
  const std::size_t n = instance.size();
  require(n >= 2, "instance needs n >= 2");
  const std::size_t s = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(1.0 / instance.lambda() - 1e-9)));
  Weight max_pivot = 0.0;
  Weight sum = 0.0;
  for (std::size_t v = 0; v < s; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      const Weight w = instance.query(static_cast<VertexId>(u), static_cast<VertexId>(v), ledger);
      if (v == 0) max_pivot = std::max(max_pivot, w);
      sum += w;
    }
  }
  return {2.0 / instance.lambda() * max_pivot,
          sum / (2.0 * static_cast<double>(choose2(n)))};
}

struct RefineState {
  AverageEstimate estimate;
  Decomposition decomposition;
};

RefineState refine_from(const MetricInstance& instance, double epsilon, const Prelude& pre,
                        const DecompositionConstants& constants, Rng& rng,
                        QueryLedger& ledger) {
  const std::size_t n = instance.size();
  const double pairs = static_cast<double>(choose2(n));
  RefineState st;
  st.estimate.alpha = 3.0 * std::log(2.0 * static_cast<double>(n)) /
                      (epsilon * epsilon * pairs * pre.crude);
  const std::size_t t = level_count(n, st.estimate.alpha * pre.L);
  Rng decomp_rng = rng.child(1);
  st.decomposition = build_decomposition(instance, pre.L, t, constants, decomp_rng, ledger);
  Rng sample_rng = rng.child(2);
  const SampledGraph h =
      sample_with_decomposition(instance, st.estimate.alpha, st.decomposition, sample_rng, ledger);
  st.estimate.value = estimate_average_from_h(h);
  return st;
}

}  // namespace

Weight SampledGraph::total_weight() const {
  Weight s = 0.0;
  for (const auto& e : edges) s += e.w;
  return s;
}

void SamplerConfig::validate() const {
  require(beta.has_value() || alpha.has_value(), "sampler config needs beta or alpha");
  if (beta) require(std::isfinite(*beta) && *beta > 0.0, "beta must be positive");
  if (alpha) require(std::isfinite(*alpha) && *alpha > 0.0, "alpha must be positive");
  require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must lie in (0, 1]");
  require(std::isfinite(gamma) && gamma >= 1.0, "gamma must be >= 1");
  constants.validate();
}

std::size_t level_count(std::size_t n, double max_scaled_weight) {
  require(n >= 2, "level count needs n >= 2");
  require(!std::isnan(max_scaled_weight) && max_scaled_weight >= 0.0,
          "scaled weight bound must be >= 0");
  const double raw = std::ceil(std::log2(static_cast<double>(n)) +
                               std::log2(std::max(max_scaled_weight, 2.0)));
  require(raw < 4096.0, "scaled weight bound is too large");
  return std::max<std::size_t>(2, static_cast<std::size_t>(raw));
}

Weight crude_average_estimate(const MetricInstance& instance, QueryLedger& ledger) {
  return read_prelude(instance, ledger).crude;
}

SampledGraph sample_with_decomposition(const MetricInstance& instance, double alpha,
                                       const Decomposition& d, Rng& rng, QueryLedger& ledger) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
  const std::size_t n = instance.size();
  const std::uint64_t start = ledger.count();
  const PairCache* cache = d.cache.get();
  auto read = [&](VertexId u, VertexId v) {
    if (cache != nullptr) {
      if (auto w = cache->find(u, v)) return *w;
    }
    return instance.query(u, v, ledger);
  };

  SampledGraph h;
  h.n = n;
  h.alpha = alpha;

  for (std::size_t i = 1; i < d.t; ++i) {
    const Level& level = d.levels[i - 1];
    if (level.nu.empty()) continue;
    std::vector<VertexId> rest;
    std::set_difference(level.vertices.begin(), level.vertices.end(), level.nu.begin(),
                        level.nu.end(), std::back_inserter(rest));
    const std::uint64_t cross = level.nu.size() * rest.size();
    const std::uint64_t count = cross + choose2(level.nu.size());
    internal::TriangleWalker walk(level.nu.size());
    auto pair_at = [&](std::uint64_t k) -> std::pair<VertexId, VertexId> {
      if (k < cross) return {level.nu[k / rest.size()], rest[k % rest.size()]};
      const auto [a, b] = walk(k - cross);
      return {level.nu[a], level.nu[b]};
    };

    Rng level_rng = rng.child(kTagSample, i);
    const double bound = level.bound;
    if (alpha * bound > 1.0) {
      for (std::uint64_t k = 0; k < count; ++k) {
        const auto [u, v] = pair_at(k);
        const double scaled = alpha * read(u, v);
        if (scaled > 1.0) {
          h.edges.push_back(ordered(u, v, scaled));
        } else if (level_rng.bernoulli(scaled)) {
          h.edges.push_back(ordered(u, v, 1.0));
        }
      }
    } else {
      for_each_bernoulli_index(count, alpha * bound, level_rng, [&](std::uint64_t k) {
        const auto [u, v] = pair_at(k);
        const double keep = checked_probability(read(u, v) / bound, "level keep");
        if (level_rng.bernoulli(keep)) h.edges.push_back(ordered(u, v, 1.0));
      });
    }
  }

  const std::size_t m = d.residual.size();
  if (m >= 2) {
    const double q = std::min(1.0, 2.0 / (instance.lambda() * static_cast<double>(n)));
    Rng residual_rng = rng.child(kTagResidual);
    internal::TriangleWalker walk(m);
    for_each_bernoulli_index(choose2(m), q, residual_rng, [&](std::uint64_t k) {
      const auto [a, b] = walk(k);
      const VertexId u = d.residual[a];
      const VertexId v = d.residual[b];
      const double keep = checked_probability(alpha * read(u, v) / q, "residual keep");
      if (residual_rng.bernoulli(keep)) h.edges.push_back(ordered(u, v, 1.0));
    });
  }

  sort_edges(h.edges);
  h.queries_used = ledger.count() - start;
  return h;
}

SampledGraph build_h_alpha(const MetricInstance& instance, double alpha,
                           const DecompositionConstants& constants, Rng& rng,
                           QueryLedger& ledger, std::optional<double> max_scaled_weight) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
  const std::uint64_t start = ledger.count();
  const Weight L = estimate_weight_upper_bound(instance, ledger);
  const std::size_t t = level_count(instance.size(), max_scaled_weight.value_or(alpha * L));
  Rng decomp_rng = rng.child(1);
  const Decomposition d = build_decomposition(instance, L, t, constants, decomp_rng, ledger);
  Rng sample_rng = rng.child(2);
  SampledGraph h = sample_with_decomposition(instance, alpha, d, sample_rng, ledger);
  h.queries_used = ledger.count() - start;
  return h;
}

AverageEstimate refine_average_estimate(const MetricInstance& instance, double epsilon,
                                        const DecompositionConstants& constants, Rng& rng,
                                        QueryLedger& ledger) {
  require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must lie in (0, 1]");
  const std::uint64_t start = ledger.count();
  const Prelude pre = read_prelude(instance, ledger);
  AverageEstimate out;
  if (pre.crude == 0.0) {
    out.degenerate = true;
  } else {
    out = refine_from(instance, epsilon, pre, constants, rng, ledger).estimate;
  }
  out.queries = ledger.count() - start;
  return out;
}

SampledGraph build_h_beta(const MetricInstance& instance, const SamplerConfig& config, Rng& rng,
                          QueryLedger& ledger) {
  config.validate();
  if (!config.beta) {
    SampledGraph h = build_h_alpha(instance, *config.alpha, config.constants, rng, ledger);
    h.seed = config.seed;
    return h;
  }
  require(config.gamma > 1.0, "gamma must exceed 1 to build H^beta");
  const std::uint64_t start = ledger.count();
  const std::size_t n = instance.size();
  const double beta = *config.beta;

  const Prelude pre = read_prelude(instance, ledger);
  if (pre.crude == 0.0) {
    fail(ErrorCode::kDegenerateInstance, "cannot linearly sample an all-zero metric");
  }
  Rng refine_rng = rng.child(kTagRefine);
  const RefineState st = refine_from(instance, std::min(1.0, config.gamma - 1.0), pre,
                                     config.constants, refine_rng, ledger);
  if (!(st.estimate.value > 0.0)) {
    fail(ErrorCode::kInternalConsistency, "average-weight estimate collapsed to zero");
  }
  const Weight scaled_estimate = st.estimate.value / config.gamma;
  const double alpha = beta / (static_cast<double>(choose2(n)) * scaled_estimate);

  const std::size_t t = level_count(n, alpha * pre.L);
  Rng final_rng = rng.child(kTagFinal);
  Decomposition d;
  if (t <= st.decomposition.t) {
    d = st.decomposition.truncated(t);
  } else {
    Rng decomp_rng = final_rng.child(1);
    d = build_decomposition(instance, pre.L, t, config.constants, decomp_rng, ledger);
  }
  Rng sample_rng = final_rng.child(2);
  SampledGraph h = sample_with_decomposition(instance, alpha, d, sample_rng, ledger);
  h.beta = beta;
  h.seed = config.seed;
  h.queries_used = ledger.count() - start;
  return h;
}

SampledGraph uniform_sample(const MetricInstance& instance, double p, Rng& rng,
                            QueryLedger& ledger) {
  require(p > 0.0 && p <= 1.0, "uniform sampling probability must lie in (0, 1]");
  const std::size_t n = instance.size();
  const std::uint64_t start = ledger.count();
  SampledGraph h;
  h.n = n;
  internal::TriangleWalker walk(n);
  for_each_bernoulli_index(choose2(n), p, rng, [&](std::uint64_t k) {
    const auto [a, b] = walk(k);
    const auto u = static_cast<VertexId>(a);
    const auto v = static_cast<VertexId>(b);
    h.edges.push_back({u, v, instance.query(u, v, ledger)});
  });
  h.queries_used = ledger.count() - start;
  return h;
}

Weight estimate_average_from_h(const SampledGraph& h) {
  require(h.alpha > 0.0, "estimate_average_from_h needs alpha > 0");
  if (h.edges.empty()) return 0.0;
  return h.total_weight() / (h.alpha * static_cast<double>(choose2(h.n)));
}

std::string sampled_graph_sidecar(const SampledGraph& h) {
  nlohmann::json j;
  j["n"] = h.n;
  j["alpha"] = h.alpha;
  j["beta"] = h.beta ? nlohmann::json(*h.beta) : nlohmann::json(nullptr);
  j["queries_used"] = h.queries_used;
  j["seed"] = h.seed;
  j["edges"] = h.edges.size();
  return j.dump(2);
}

void write_sampled_graph(const SampledGraph& h, const std::string& csv_path,
                         const std::string& sidecar_path) {
  std::ofstream csv(csv_path);
  if (!csv) fail(ErrorCode::kIo, "cannot write '" + csv_path + "'");
  csv << "u,v,weight\n";
  char buf[64];
  for (const auto& e : h.edges) {
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    csv << e.u << ',' << e.v << ',' << buf << '\n';
  }
  if (!csv) fail(ErrorCode::kIo, "write failed for '" + csv_path + "'");
  std::ofstream side(sidecar_path);
  if (!side) fail(ErrorCode::kIo, "cannot write '" + sidecar_path + "'");
  side << sampled_graph_sidecar(h) << '\n';
}

SampledGraph read_sampled_graph(const std::string& csv_path, const std::string& sidecar_path) {
  SampledGraph h;
  {
    std::ifstream side(sidecar_path);
    if (!side) fail(ErrorCode::kIo, "cannot open '" + sidecar_path + "'");
    try {
      const auto j = nlohmann::json::parse(side);
      h.n = j.at("n").get<std::size_t>();
      h.alpha = j.at("alpha").get<double>();
      if (!j.at("beta").is_null()) h.beta = j.at("beta").get<double>();
      h.queries_used = j.at("queries_used").get<std::uint64_t>();
      h.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kParse, sidecar_path + ": " + e.what());
    }
  }
  std::ifstream csv(csv_path);
  if (!csv) fail(ErrorCode::kIo, "cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(csv, line) || line.rfind("u,v,weight", 0) != 0) {
    fail(ErrorCode::kParse, csv_path + ": expected header u,v,weight");
  }
  while (std::getline(csv, line)) {
    if (line.empty() || line == "\r") continue;
    unsigned long long u = 0;
    unsigned long long v = 0;
    double w = 0.0;
    if (std::sscanf(line.c_str(), "%llu,%llu,%lf", &u, &v, &w) != 3) {
      fail(ErrorCode::kParse, csv_path + ": bad row '" + line + "'");
    }
    h.edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  h.as_graph().validate();
  return h;
}

}  // namespace linsample
