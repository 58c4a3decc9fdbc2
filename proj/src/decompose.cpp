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

#include "linsample/decompose.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "linsample/error.hpp"
#include "pair_walk.hpp"

namespace linsample {

using internal::choose2;

void DecompositionConstants::validate() const {
  require(std::isfinite(c_sample) && c_sample > 0.0, "c_sample must be positive");
  require(std::isfinite(threshold_frac) && threshold_frac > 0.0,
          "threshold_frac must be positive");
}

PairCache::PairCache(std::size_t n, std::span<const VertexId> vertices)
    : local_(n, -1), m_(vertices.size()), weights_(choose2(vertices.size()), 0.0) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local_[vertices[i]] = static_cast<std::int32_t>(i);
  }
}

bool PairCache::covers(std::span<const VertexId> vertices) const {
  return std::all_of(vertices.begin(), vertices.end(),
                     [&](VertexId v) { return v < local_.size() && local_[v] >= 0; });
}

std::size_t PairCache::index(VertexId u, VertexId v) const {
  auto a = static_cast<std::size_t>(local_[u]);
  auto b = static_cast<std::size_t>(local_[v]);
  if (a > b) std::swap(a, b);
  return triangle_index(m_, a, b);
}

std::optional<Weight> PairCache::find(VertexId u, VertexId v) const {
  if (u >= local_.size() || v >= local_.size() || local_[u] < 0 || local_[v] < 0) {
    return std::nullopt;
  }
  return weights_[index(u, v)];
}

void PairCache::store(VertexId u, VertexId v, Weight w) { weights_[index(u, v)] = w; }

Weight Decomposition::bound(std::size_t i) const {
  return std::ldexp(L, -static_cast<int>(i - 1));
}

Decomposition Decomposition::truncated(std::size_t t_prime) const {
  require(t_prime >= 2 && t_prime <= t, "truncation must keep 2..t levels");
  Decomposition out;
  out.L = L;
  out.t = t_prime;
  out.levels.assign(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(t_prime - 1));
  out.residual = t_prime < t ? levels[t_prime - 1].vertices : residual;
  out.residual_bound = bound(t_prime);
  out.queries = queries;
  out.cache = cache;
  return out;
}

std::string Decomposition::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["t"] = t;
  j["queries"] = queries;
  auto& arr = j["levels"] = nlohmann::json::array();
  for (const Level& lv : levels) {
    arr.push_back({{"Li", lv.bound},
                   {"Vi", lv.vertices},
                   {"nui", lv.nu},
                   {"exhaustive", lv.exhaustive},
                   {"queries", lv.queries}});
  }
  j["residual"] = {{"Lt", residual_bound}, {"Vt", residual}};
  return j.dump();
}

Decomposition Decomposition::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Decomposition d;
    d.L = j.at("L").get<double>();
    d.t = j.at("t").get<std::size_t>();
    d.queries = j.value("queries", std::uint64_t{0});
    for (const auto& lv : j.at("levels")) {
      Level level;
      level.bound = lv.at("Li").get<double>();
      level.vertices = lv.at("Vi").get<std::vector<VertexId>>();
      level.nu = lv.at("nui").get<std::vector<VertexId>>();
      level.exhaustive = lv.value("exhaustive", false);
      level.queries = lv.value("queries", std::uint64_t{0});
      d.levels.push_back(std::move(level));
    }
    d.residual = j.at("residual").at("Vt").get<std::vector<VertexId>>();
    d.residual_bound = j.at("residual").at("Lt").get<double>();
    if (d.t < 2 || d.levels.size() != d.t - 1) {
      fail(ErrorCode::kParse, "decomposition JSON: level count does not match t");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("decomposition JSON: ") + e.what());
  }
}

Weight estimate_weight_upper_bound(const MetricInstance& instance, QueryLedger& ledger) {
  const std::size_t n = instance.size();
  require(n >= 2, "estimate_weight_upper_bound needs n >= 2");
  Weight best = 0.0;
  for (std::size_t u = 1; u < n; ++u) {
    best = std::max(best, instance.query(static_cast<VertexId>(u), 0, ledger));
  }
  return 2.0 / instance.lambda() * best;
}

double level_log_factor(std::size_t n, std::size_t t) {
  return std::log(static_cast<double>(n)) + std::log(static_cast<double>(t));
}

namespace {

std::vector<VertexId> select_by(std::span<const VertexId> vertices,
                                const std::vector<std::size_t>& score, double cut) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (static_cast<double>(score[i]) >= cut) out.push_back(vertices[i]);
  }
  return out;
}

}  // namespace

NuSelection build_nu(const MetricInstance& instance, std::span<const VertexId> vertices,
                     Weight bound, const DecompositionConstants& constants, std::size_t t,
                     Rng& rng, QueryLedger& ledger, std::shared_ptr<const PairCache>* cache) {
  require(t >= 2, "build_nu needs t >= 2");
  require(!vertices.empty(), "build_nu needs a non-empty vertex set");
  require(std::isfinite(bound) && bound >= 0.0, "level bound must be finite and >= 0");
  constants.validate();

  const std::size_t n = instance.size();
  const std::size_t m = vertices.size();
  const double ell = level_log_factor(n, t);
  const double threshold = instance.lambda() * bound / 4.0;

  bool exhaustive = false;
  switch (constants.mode) {
    case NuMode::kAuto:
      exhaustive = static_cast<double>(m) <= 2.0 * constants.c_sample * ell;
      break;
    case NuMode::kExhaustive:
      exhaustive = true;
      break;
    case NuMode::kSampling:
      exhaustive = false;
      break;
  }

  const PairCache* known =
      cache != nullptr && *cache != nullptr && (*cache)->covers(vertices) ? cache->get() : nullptr;
  auto read = [&](VertexId u, VertexId v) {
    if (known != nullptr) return *known->find(u, v);
    return instance.query(u, v, ledger);
  };

  std::vector<std::size_t> score(m, 0);
  if (exhaustive) {
    if (bound == 0.0) {
      std::fill(score.begin(), score.end(), m - 1);
    } else {
      std::shared_ptr<PairCache> fresh;
      if (known == nullptr && cache != nullptr && choose2(m) <= constants.cache_limit) {
        fresh = std::make_shared<PairCache>(n, vertices);
      }
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          const Weight w = read(vertices[a], vertices[b]);
          if (fresh) fresh->store(vertices[a], vertices[b], w);
          if (w >= threshold) {
            ++score[a];
            ++score[b];
          }
        }
      }
      if (fresh) *cache = std::move(fresh);
    }
    return {select_by(vertices, score, static_cast<double>(m) / 4.0), true};
  }

  const double p = constants.c_sample * ell / static_cast<double>(m);
  if (p >= 1.0) {
    require(constants.mode != NuMode::kSampling,
            "sampling branch forced but the sampling probability is >= 1");
  }
  internal::TriangleWalker walk(m);
  for_each_bernoulli_index(choose2(m), std::min(p, 1.0), rng, [&](std::uint64_t k) {
    const auto [a, b] = walk(k);
    if (bound == 0.0 || read(vertices[a], vertices[b]) >= threshold) {
      ++score[a];
      ++score[b];
    }
  });
  return {select_by(vertices, score, constants.threshold_frac * constants.c_sample * ell), false};
}

Decomposition build_decomposition(const MetricInstance& instance, Weight L, std::size_t t,
                                  const DecompositionConstants& constants, Rng& rng,
                                  QueryLedger& ledger) {
  require(t >= 2, "build_decomposition needs t >= 2");
  require(std::isfinite(L) && L >= 0.0, "weight bound L must be finite and >= 0");
  constants.validate();
  const std::uint64_t start = ledger.count();

  Decomposition d;
  d.L = L;
  d.t = t;
  std::vector<VertexId> current(instance.size());
  for (std::size_t v = 0; v < current.size(); ++v) current[v] = static_cast<VertexId>(v);

  std::shared_ptr<const PairCache> cache;
  for (std::size_t i = 1; i < t; ++i) {
    Level level;
    level.bound = d.bound(i);
    level.vertices = current;
    if (!current.empty()) {
      const std::uint64_t before = ledger.count();
      Rng level_rng = rng.child(0x6c6576656cULL, i);
      NuSelection sel =
          build_nu(instance, current, level.bound, constants, t, level_rng, ledger, &cache);
      level.nu = std::move(sel.nu);
      level.exhaustive = sel.exhaustive;
      level.queries = ledger.count() - before;
      std::vector<VertexId> next;
      next.reserve(current.size() - level.nu.size());
      std::set_difference(current.begin(), current.end(), level.nu.begin(), level.nu.end(),
                          std::back_inserter(next));
      current = std::move(next);
    }
    d.levels.push_back(std::move(level));
  }
  d.residual = std::move(current);
  d.residual_bound = d.bound(t);
  d.cache = std::move(cache);
  d.queries = ledger.count() - start;
  return d;
}

Decomposition build_decomposition(const MetricInstance& instance, std::size_t t,
                                  const DecompositionConstants& constants, Rng& rng,
                                  QueryLedger& ledger) {
  const std::uint64_t start = ledger.count();
  const Weight L = estimate_weight_upper_bound(instance, ledger);
  Decomposition d = build_decomposition(instance, L, t, constants, rng, ledger);
  d.queries = ledger.count() - start;
  return d;
}

std::vector<std::size_t> threshold_degrees(const MetricInstance& instance,
                                           std::span<const VertexId> vertices, Weight bound) {
  QueryLedger private_ledger;
  const double threshold = instance.lambda() * bound / 4.0;
  std::vector<std::size_t> deg(vertices.size(), 0);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (instance.query(vertices[a], vertices[b], private_ledger) >= threshold) {
        ++deg[a];
        ++deg[b];
      }
    }
  }
  return deg;
}

}  // namespace linsample
