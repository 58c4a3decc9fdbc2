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

#include "linsample/linsample.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "linsample/error.hpp"
#include "linsample/experiments.hpp"
#include "linsample/instance_io.hpp"
#include "linsample/oracle.hpp"
#include "linsample/sampler.hpp"

struct ls_instance {
  linsample::MetricInstance impl;
};

struct ls_ledger {
  explicit ls_ledger(std::uint64_t budget) : impl(budget) {}
  linsample::QueryLedger impl;
};

struct ls_sampled_graph {
  linsample::SampledGraph impl;
};

namespace {

thread_local std::string last_error;

ls_status set_error(ls_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename Fn>
ls_status guarded(Fn&& fn) {
  try {
    fn();
    return LS_OK;
  } catch (const linsample::Error& e) {
    return set_error(static_cast<ls_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LS_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LS_UNKNOWN, e.what());
  }
}

ls_status null_argument(const char* name) {
  return set_error(LS_INVALID_ARGUMENT, std::string(name) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace

extern "C" {

void ls_sampler_config_init(ls_sampler_config* config) {
  if (config == nullptr) return;
  const linsample::DecompositionConstants defaults;
  config->has_beta = 0;
  config->beta = 0.0;
  config->has_alpha = 0;
  config->alpha = 0.0;
  config->epsilon = 0.1;
  config->gamma = 2.0;
  config->c_sample = defaults.c_sample;
  config->threshold_frac = defaults.threshold_frac;
  config->seed = 0;
}

const char* ls_last_error(void) { return last_error.c_str(); }

const char* ls_status_name(ls_status status) {
  if (status == LS_OK) return "ok";
  if (status == LS_UNKNOWN) return "unknown";
  return linsample::error_code_name(static_cast<linsample::ErrorCode>(status));
}

const char* ls_version(void) { return "1.0.0"; }

ls_status ls_instance_from_spec(const char* spec, ls_instance** out) {
  if (spec == nullptr) return null_argument("spec");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new ls_instance{linsample::parse_instance_spec(spec)}; });
}

ls_status ls_instance_from_points(const double* coords, size_t n, size_t dim, ls_instance** out) {
  if (coords == nullptr) return null_argument("coords");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new ls_instance{
        linsample::make_euclidean(std::vector<double>(coords, coords + n * dim), dim)};
  });
}

ls_status ls_instance_from_matrix(const double* full, size_t n, double lambda, ls_instance** out) {
  if (full == nullptr) return null_argument("full");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new ls_instance{
        linsample::make_matrix(n, std::vector<double>(full, full + n * n), lambda)};
  });
}

ls_status ls_instance_power(const ls_instance* inner, double p, ls_instance** out) {
  if (inner == nullptr) return null_argument("inner");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new ls_instance{linsample::power_wrap(inner->impl, p)}; });
}

void ls_instance_free(ls_instance* instance) { delete instance; }

size_t ls_instance_size(const ls_instance* instance) {
  return instance == nullptr ? 0 : instance->impl.size();
}

double ls_instance_lambda(const ls_instance* instance) {
  return instance == nullptr ? 0.0 : instance->impl.lambda();
}

ls_status ls_instance_validate(const ls_instance* instance, size_t cap, int* ok,
                               uint32_t triple[3]) {
  if (instance == nullptr) return null_argument("instance");
  if (ok == nullptr) return null_argument("ok");
  return guarded([&] {
    linsample::ValidateOptions opts;
    if (cap != 0) opts.cap = cap;
    const auto bad = linsample::validate_lambda_metric(instance->impl, opts);
    *ok = bad ? 0 : 1;
    if (bad && triple != nullptr) {
      triple[0] = bad->a;
      triple[1] = bad->b;
      triple[2] = bad->c;
    }
  });
}

ls_status ls_ledger_new(uint64_t budget, ls_ledger** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new ls_ledger(budget); });
}

void ls_ledger_free(ls_ledger* ledger) { delete ledger; }

uint64_t ls_ledger_count(const ls_ledger* ledger) {
  return ledger == nullptr ? 0 : ledger->impl.count();
}

void ls_ledger_reset(ls_ledger* ledger) {
  if (ledger != nullptr) ledger->impl.reset();
}

ls_status ls_query(const ls_instance* instance, uint32_t u, uint32_t v, ls_ledger* ledger,
                   double* weight) {
  if (instance == nullptr) return null_argument("instance");
  if (ledger == nullptr) return null_argument("ledger");
  if (weight == nullptr) return null_argument("weight");
  return guarded([&] { *weight = instance->impl.query(u, v, ledger->impl); });
}

ls_status ls_sample(const ls_instance* instance, const ls_sampler_config* config,
                    ls_ledger* ledger, ls_sampled_graph** out) {
  if (instance == nullptr) return null_argument("instance");
  if (config == nullptr) return null_argument("config");
  if (ledger == nullptr) return null_argument("ledger");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    linsample::SamplerConfig cfg;
    if (config->has_beta) cfg.beta = config->beta;
    if (config->has_alpha) cfg.alpha = config->alpha;
    cfg.epsilon = config->epsilon;
    cfg.gamma = config->gamma;
    cfg.constants.c_sample = config->c_sample;
    cfg.constants.threshold_frac = config->threshold_frac;
    cfg.seed = config->seed;
    linsample::Rng rng(config->seed);
    *out = new ls_sampled_graph{linsample::build_h_beta(instance->impl, cfg, rng, ledger->impl)};
  });
}

ls_status ls_uniform_sample(const ls_instance* instance, double p, uint64_t seed,
                            ls_ledger* ledger, ls_sampled_graph** out) {
  if (instance == nullptr) return null_argument("instance");
  if (ledger == nullptr) return null_argument("ledger");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    linsample::Rng rng(seed);
    auto h = linsample::uniform_sample(instance->impl, p, rng, ledger->impl);
    h.seed = seed;
    *out = new ls_sampled_graph{std::move(h)};
  });
}

void ls_sampled_graph_free(ls_sampled_graph* graph) { delete graph; }

size_t ls_sampled_graph_vertex_count(const ls_sampled_graph* graph) {
  return graph == nullptr ? 0 : graph->impl.n;
}

size_t ls_sampled_graph_edge_count(const ls_sampled_graph* graph) {
  return graph == nullptr ? 0 : graph->impl.edges.size();
}

double ls_sampled_graph_alpha(const ls_sampled_graph* graph) {
  return graph == nullptr ? 0.0 : graph->impl.alpha;
}

uint64_t ls_sampled_graph_queries(const ls_sampled_graph* graph) {
  return graph == nullptr ? 0 : graph->impl.queries_used;
}

ls_status ls_sampled_graph_edge(const ls_sampled_graph* graph, size_t index, uint32_t* u,
                                uint32_t* v, double* weight) {
  if (graph == nullptr) return null_argument("graph");
  if (index >= graph->impl.edges.size()) {
    return set_error(LS_INVALID_ARGUMENT, "edge index out of range");
  }
  const auto& e = graph->impl.edges[index];
  if (u != nullptr) *u = e.u;
  if (v != nullptr) *v = e.v;
  if (weight != nullptr) *weight = e.w;
  return LS_OK;
}

ls_status ls_sampled_graph_average(const ls_sampled_graph* graph, double* estimate) {
  if (graph == nullptr) return null_argument("graph");
  if (estimate == nullptr) return null_argument("estimate");
  return guarded([&] { *estimate = linsample::estimate_average_from_h(graph->impl); });
}

ls_status ls_sampled_graph_write(const ls_sampled_graph* graph, const char* csv_path,
                                 const char* sidecar_path) {
  if (graph == nullptr) return null_argument("graph");
  if (csv_path == nullptr) return null_argument("csv_path");
  if (sidecar_path == nullptr) return null_argument("sidecar_path");
  return guarded([&] { linsample::write_sampled_graph(graph->impl, csv_path, sidecar_path); });
}

ls_status ls_run_experiment(const char* command, const char* params_json, int as_csv,
                            char** report, int* passed) {
  if (command == nullptr) return null_argument("command");
  if (report == nullptr) return null_argument("report");
  *report = nullptr;
  return guarded([&] {
    linsample::Json params = linsample::Json::object();
    if (params_json != nullptr && *params_json != '\0') {
      try {
        params = linsample::Json::parse(params_json);
      } catch (const nlohmann::json::exception& e) {
        linsample::fail(linsample::ErrorCode::kParse, std::string("parameters: ") + e.what());
      }
    }
    const auto result = linsample::run_experiment(command, params);
    *report = copy_string(as_csv ? to_csv(result.csv) : result.report.dump(2) + "\n");
    if (passed != nullptr) *passed = result.passed ? 1 : 0;
  });
}

void ls_string_free(char* text) { std::free(text); }

}  // extern "C"
