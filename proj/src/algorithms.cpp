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

#include "linsample/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include <json.hpp>

#include "linsample/error.hpp"

namespace linsample {
namespace {

using Adjacency = std::vector<std::vector<std::pair<VertexId, Weight>>>;

Adjacency build_adjacency(const WeightedGraph& g) {
  Adjacency adj(g.n);
  for (const auto& e : g.edges) {
    require(e.u < g.n && e.v < g.n && e.u != e.v, "edge endpoints must be distinct and in range");
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

Weight adjacency_weight(const Adjacency& adj, VertexId u, VertexId v) {
  const auto& row = adj[u];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(v, -1.0));
  Weight w = 0.0;
  for (; it != row.end() && it->first == v; ++it) w += it->second;
  return w;
}

std::vector<std::uint8_t> membership(std::size_t n, std::span<const VertexId> vertices) {
  std::vector<std::uint8_t> in(n, 0);
  for (VertexId v : vertices) {
    require(v < n, "vertex out of range");
    in[v] = 1;
  }
  return in;
}

void normalize(std::vector<std::vector<VertexId>>& groups) {
  for (auto& grp : groups) std::sort(grp.begin(), grp.end());
  std::sort(groups.begin(), groups.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Objective values

double subgraph_density(const WeightedGraph& g, std::span<const VertexId> vertices) {
  if (vertices.size() < 2) return 0.0;
  const auto in = membership(g.n, vertices);
  Weight s = 0.0;
  for (const auto& e : g.edges) {
    if (in[e.u] && in[e.v]) s += e.w;
  }
  return s / static_cast<double>(vertices.size());
}

double cut_value(const WeightedGraph& g, std::span<const std::uint8_t> side) {
  require(side.size() == g.n, "cut assignment has the wrong length");
  Weight s = 0.0;
  for (const auto& e : g.edges) {
    if (side[e.u] != side[e.v]) s += e.w;
  }
  return s;
}

double partition_value(const WeightedGraph& g, const std::vector<std::vector<VertexId>>& groups) {
  std::vector<std::int64_t> group_of(g.n, -1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (VertexId v : groups[i]) {
      require(v < g.n, "vertex out of range");
      group_of[v] = static_cast<std::int64_t>(i);
    }
  }
  Weight s = 0.0;
  for (const auto& e : g.edges) {
    if (group_of[e.u] >= 0 && group_of[e.u] == group_of[e.v]) s += e.w;
  }
  return s;
}

double subgraph_density(const DenseWeights& w, std::span<const VertexId> vertices) {
  if (vertices.size() < 2) return 0.0;
  Weight s = 0.0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) s += w(vertices[a], vertices[b]);
  }
  return s / static_cast<double>(vertices.size());
}

double cut_value(const DenseWeights& w, std::span<const std::uint8_t> side) {
  require(side.size() == w.size(), "cut assignment has the wrong length");
  Weight s = 0.0;
  for (std::size_t u = 0; u < w.size(); ++u) {
    for (std::size_t v = u + 1; v < w.size(); ++v) {
      if (side[u] != side[v]) s += w(u, v);
    }
  }
  return s;
}

double partition_value(const DenseWeights& w, const std::vector<std::vector<VertexId>>& groups) {
  Weight s = 0.0;
  for (const auto& grp : groups) {
    for (std::size_t a = 0; a < grp.size(); ++a) {
      for (std::size_t b = a + 1; b < grp.size(); ++b) s += w(grp[a], grp[b]);
    }
  }
  return s;
}

double evaluate_density(const MetricInstance& instance, std::span<const VertexId> vertices,
                        QueryLedger& ledger) {
  if (vertices.size() < 2) return 0.0;
  Weight s = 0.0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      s += instance.query(vertices[a], vertices[b], ledger);
    }
  }
  return s / static_cast<double>(vertices.size());
}

double evaluate_cut(const MetricInstance& instance, std::span<const std::uint8_t> side,
                    QueryLedger& ledger) {
  require(side.size() == instance.size(), "cut assignment has the wrong length");
  std::vector<VertexId> left;
  std::vector<VertexId> right;
  for (std::size_t v = 0; v < side.size(); ++v) {
    (side[v] ? right : left).push_back(static_cast<VertexId>(v));
  }
  Weight s = 0.0;
  for (VertexId u : left) {
    for (VertexId v : right) s += instance.query(u, v, ledger);
  }
  return s;
}

double evaluate_partition(const MetricInstance& instance,
                          const std::vector<std::vector<VertexId>>& groups, QueryLedger& ledger) {
  Weight s = 0.0;
  for (const auto& grp : groups) {
    for (std::size_t a = 0; a < grp.size(); ++a) {
      for (std::size_t b = a + 1; b < grp.size(); ++b) {
        s += instance.query(grp[a], grp[b], ledger);
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Solvers

SubgraphSelection greedy_densest(const WeightedGraph& g) {
  if (g.edges.empty()) fail(ErrorCode::kInvalidArgument, "no edges");
  const std::size_t n = g.n;
  const Adjacency adj = build_adjacency(g);

  std::vector<Weight> deg(n, 0.0);
  Weight total = 0.0;
  for (const auto& e : g.edges) {
    deg[e.u] += e.w;
    deg[e.v] += e.w;
    total += e.w;
  }
  std::set<std::pair<Weight, VertexId>> queue;
  for (std::size_t v = 0; v < n; ++v) queue.emplace(deg[v], static_cast<VertexId>(v));

  std::vector<std::uint8_t> alive(n, 1);
  std::vector<VertexId> removed;
  removed.reserve(n);
  double best = total / static_cast<double>(n);
  std::size_t best_size = n;
  for (std::size_t remaining = n; remaining > 2; --remaining) {
    const VertexId v = queue.begin()->second;
    queue.erase(queue.begin());
    alive[v] = 0;
    removed.push_back(v);
    total -= deg[v];
    for (const auto& [u, w] : adj[v]) {
      if (!alive[u]) continue;
      queue.erase({deg[u], u});
      deg[u] -= w;
      queue.emplace(deg[u], u);
    }
    const double density = total / static_cast<double>(remaining - 1);
    if (density > best + 1e-12 * std::max(1.0, best)) {
      best = density;
      best_size = remaining - 1;
    }
  }

  std::vector<std::uint8_t> dropped(n, 0);
  for (std::size_t i = 0; i < n - best_size; ++i) dropped[removed[i]] = 1;
  SubgraphSelection out;
  for (std::size_t v = 0; v < n; ++v) {
    if (!dropped[v]) out.vertices.push_back(static_cast<VertexId>(v));
  }
  out.density = subgraph_density(g, out.vertices);
  return out;
}

namespace {

double flip_gain(const Adjacency& adj, std::span<const std::uint8_t> side, std::size_t v) {
  double gain = 0.0;
  for (const auto& [u, w] : adj[v]) gain += side[u] == side[v] ? w : -w;
  return gain;
}

}  // namespace

bool is_local_optimum(const WeightedGraph& g, std::span<const std::uint8_t> side,
                      double tolerance) {
  const Adjacency adj = build_adjacency(g);
  for (std::size_t v = 0; v < g.n; ++v) {
    if (flip_gain(adj, side, v) > tolerance) return false;
  }
  return true;
}

CutAssignment local_search_maxcut(const WeightedGraph& g, Rng& rng, std::size_t restarts) {
  require(g.n >= 2, "max cut needs n >= 2");
  require(restarts >= 1, "max cut needs at least one restart");
  const Adjacency adj = build_adjacency(g);
  const double tol = 1e-12 * std::max(1.0, g.total_weight());

  CutAssignment best;
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<std::uint8_t> side(g.n);
    for (auto& s : side) s = static_cast<std::uint8_t>(rng.next_u64() & 1U);
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t v = 0; v < g.n; ++v) {
        if (flip_gain(adj, side, v) > tol) {
          side[v] ^= 1U;
          improved = true;
        }
      }
    }
    const double value = cut_value(g, side);
    if (r == 0 || value > best.value + tol) best = {std::move(side), value};
  }
  return best;
}

HypermatchingPartition greedy_hypermatching(const WeightedGraph& g, std::size_t k, Rng& rng) {
  const std::size_t n = g.n;
  require(k >= 2, "hypermatching needs k >= 2");
  require(n >= k && n % k == 0, "group size k must divide n");
  const Adjacency adj = build_adjacency(g);

  std::vector<WeightedEdge> order = g.edges;
  for (auto& e : order) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(order.begin(), order.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.w != b.w) return a.w > b.w;
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<std::uint8_t> taken(n, 0);
  std::vector<double> gain(n, 0.0);
  std::vector<std::vector<VertexId>> groups;
  std::size_t next_edge = 0;
  while (groups.size() < n / k) {
    std::vector<VertexId> grp;
    std::vector<VertexId> touched;
    auto add = [&](VertexId v) {
      grp.push_back(v);
      taken[v] = 1;
      for (const auto& [u, w] : adj[v]) {
        gain[u] += w;
        touched.push_back(u);
      }
    };
    while (next_edge < order.size() &&
           (taken[order[next_edge].u] || taken[order[next_edge].v])) {
      ++next_edge;
    }
    if (next_edge < order.size()) {
      add(order[next_edge].u);
      add(order[next_edge].v);
    } else {
      add(static_cast<VertexId>(std::find(taken.begin(), taken.end(), 0) - taken.begin()));
    }
    while (grp.size() < k) {
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (!taken[v] && (pick == n || gain[v] > gain[pick])) pick = v;
      }
      add(static_cast<VertexId>(pick));
    }
    for (VertexId u : touched) gain[u] = 0.0;
    groups.push_back(std::move(grp));
  }

  if (groups.size() >= 2) {
    std::vector<std::size_t> group_of(n);
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = 0; j < groups[i].size(); ++j) {
        group_of[groups[i][j]] = i;
        slot[groups[i][j]] = j;
      }
    }
    const double tol = 1e-12 * std::max(1.0, g.total_weight());
    auto affinity = [&](VertexId v, std::size_t grp, VertexId skip) {
      double s = 0.0;
      for (VertexId x : groups[grp]) {
        if (x != v && x != skip) s += adjacency_weight(adj, v, x);
      }
      return s;
    };
    for (std::size_t fails = 0; fails < n;) {
      const auto a = static_cast<VertexId>(rng.below(n));
      const auto b = static_cast<VertexId>(rng.below(n));
      const std::size_t ga = group_of[a];
      const std::size_t gb = group_of[b];
      if (ga == gb) {
        ++fails;
        continue;
      }
      const double delta = affinity(a, gb, b) + affinity(b, ga, a) - affinity(a, ga, a) -
                           affinity(b, gb, b);
      if (delta > tol) {
        std::swap(groups[ga][slot[a]], groups[gb][slot[b]]);
        std::swap(slot[a], slot[b]);
        group_of[a] = gb;
        group_of[b] = ga;
        fails = 0;
      } else {
        ++fails;
      }
    }
  }

  normalize(groups);
  HypermatchingPartition out;
  out.value = partition_value(g, groups);
  out.groups = std::move(groups);
  return out;
}

// ---------------------------------------------------------------------------
// Pipelines

Problem Problem::parse(std::string_view text) {
  if (text == "avg" || text == "average") return {ProblemKind::kAverage, 0};
  if (text == "densest") return {ProblemKind::kDensest, 0};
  if (text == "maxcut") return {ProblemKind::kMaxCut, 0};
  constexpr std::string_view prefix = "hypermatching:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string_view num = text.substr(prefix.size());
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec == std::errc() && ptr == num.data() + num.size() && k >= 2) {
      return {ProblemKind::kHypermatching, k};
    }
  }
  fail(ErrorCode::kInvalidArgument,
       "unknown problem '" + std::string(text) +
           "' (expected avg, densest, maxcut or hypermatching:<k>)");
}

std::string Problem::name() const {
  switch (kind) {
    case ProblemKind::kAverage: return "avg";
    case ProblemKind::kDensest: return "densest";
    case ProblemKind::kMaxCut: return "maxcut";
    case ProblemKind::kHypermatching: return "hypermatching:" + std::to_string(k);
  }
  return "unknown";
}

double beta_for(const Problem& problem, std::size_t n, double epsilon) {
  require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must lie in (0, 1]");
  require(n >= 2, "beta needs n >= 2");
  const double nn = static_cast<double>(n);
  const double e2 = epsilon * epsilon;
  switch (problem.kind) {
    case ProblemKind::kAverage: return 3.0 * std::log(2.0 * nn) / e2;
    case ProblemKind::kDensest: return 9.0 * nn * std::log(nn) / e2;
    case ProblemKind::kMaxCut: return 18.0 * nn * std::log(nn) / e2;
    case ProblemKind::kHypermatching:
      require(problem.k >= 2, "hypermatching needs k >= 2");
      return 6.0 * std::log(nn) / e2 * nn * nn / static_cast<double>(problem.k - 1);
  }
  return 0.0;
}

SolveResult sparsify_and_solve(const MetricInstance& instance, const Problem& problem,
                               double epsilon, const SamplerConfig& config, Rng& rng,
                               QueryLedger& ledger, const SolveOptions& options) {
  const std::size_t n = instance.size();
  require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must lie in (0, 1]");
  if (problem.kind == ProblemKind::kHypermatching) {
    require(problem.k >= 2 && n % problem.k == 0, "group size k must divide n");
  }

  SolveResult res;
  res.problem = problem;
  res.epsilon = epsilon;
  res.beta = options.beta_override.value_or(beta_for(problem, n, epsilon));

  SamplerConfig cfg = config;
  cfg.beta = res.beta;
  cfg.alpha.reset();
  cfg.epsilon = epsilon;

  const std::uint64_t start = ledger.count();
  Rng sample_rng = rng.child(0x73706172ULL);
  const SampledGraph h = build_h_beta(instance, cfg, sample_rng, ledger);
  res.alpha = h.alpha;
  res.sampled_edges = h.edges.size();
  const WeightedGraph graph = h.as_graph();
  Rng solver_rng = rng.child(0x736f6c76ULL);
  QueryLedger evaluation;

  switch (problem.kind) {
    case ProblemKind::kAverage:
      res.value_in_h = h.total_weight();
      res.estimate = estimate_average_from_h(h);
      break;
    case ProblemKind::kDensest: {
      SubgraphSelection sel;
      if (graph.edges.empty()) {
        for (std::size_t v = 0; v < n; ++v) sel.vertices.push_back(static_cast<VertexId>(v));
      } else {
        sel = greedy_densest(graph);
      }
      res.value_in_h = sel.density;
      res.value_in_g = evaluate_density(instance, sel.vertices, evaluation);
      res.densest = std::move(sel);
      break;
    }
    case ProblemKind::kMaxCut: {
      CutAssignment cut = local_search_maxcut(graph, solver_rng, options.maxcut_restarts);
      res.value_in_h = cut.value;
      res.value_in_g = evaluate_cut(instance, cut.side, evaluation);
      res.cut = std::move(cut);
      break;
    }
    case ProblemKind::kHypermatching: {
      HypermatchingPartition part = greedy_hypermatching(graph, problem.k, solver_rng);
      res.value_in_h = part.value;
      res.value_in_g = evaluate_partition(instance, part.groups, evaluation);
      res.matching = std::move(part);
      break;
    }
  }
  if (problem.kind != ProblemKind::kAverage) res.estimate = res.value_in_h / res.alpha;
  res.queries_algorithm = ledger.count() - start;
  res.queries_evaluation = evaluation.count();
  return res;
}

std::string SolveResult::to_json() const {
  nlohmann::json j;
  j["problem"] = problem.name();
  j["epsilon"] = epsilon;
  j["beta"] = beta;
  j["alpha"] = alpha;
  j["sampled_edges"] = sampled_edges;
  j["value_in_H"] = value_in_h;
  j["value_in_G"] = value_in_g ? nlohmann::json(*value_in_g) : nlohmann::json(nullptr);
  j["estimate"] = estimate;
  j["queries_algorithm"] = queries_algorithm;
  j["queries_evaluation"] = queries_evaluation;
  if (densest) j["vertices"] = densest->vertices;
  if (cut) j["side"] = cut->side;
  if (matching) j["groups"] = matching->groups;
  return j.dump();
}

}  // namespace linsample
