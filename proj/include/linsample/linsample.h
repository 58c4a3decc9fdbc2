/*
 * Copyright 2026 The linsample Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to linsample. Objects are opaque handles owned by the caller
 * and released with the matching *_free function. Every fallible call
 * returns an ls_status; on failure ls_last_error() describes the problem
 * (the message is per thread and valid until the next failing call).
 */

#ifndef LINSAMPLE_LINSAMPLE_H_
#define LINSAMPLE_LINSAMPLE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LINSAMPLE_BUILDING)
#define LS_API __declspec(dllexport)
#else
#define LS_API __declspec(dllimport)
#endif
#else
#define LS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ls_status {
  LS_OK = 0,
  LS_INVALID_ARGUMENT = 1,
  LS_CAP_EXCEEDED = 2,
  LS_DEGENERATE_INSTANCE = 3,
  LS_INTERNAL_CONSISTENCY = 4,
  LS_BUDGET_EXHAUSTED = 5,
  LS_IO = 6,
  LS_PARSE = 7,
  LS_UNKNOWN = 99
} ls_status;

#define LS_UNLIMITED UINT64_MAX

typedef struct ls_instance ls_instance;
typedef struct ls_ledger ls_ledger;
typedef struct ls_sampled_graph ls_sampled_graph;

typedef struct ls_sampler_config {
  int has_beta;
  double beta;
  int has_alpha;
  double alpha;
  double epsilon;
  double gamma;
  double c_sample;
  double threshold_frac;
  uint64_t seed;
} ls_sampler_config;

/* Defaults: no beta/alpha, epsilon 0.1, gamma 2, default constants, seed 0. */
LS_API void ls_sampler_config_init(ls_sampler_config* config);

LS_API const char* ls_last_error(void);
LS_API const char* ls_status_name(ls_status status);
LS_API const char* ls_version(void);

/* Instances */
LS_API ls_status ls_instance_from_spec(const char* spec, ls_instance** out);
LS_API ls_status ls_instance_from_points(const double* coords, size_t n, size_t dim,
                                         ls_instance** out);
LS_API ls_status ls_instance_from_matrix(const double* full, size_t n, double lambda,
                                         ls_instance** out);
LS_API ls_status ls_instance_power(const ls_instance* inner, double p, ls_instance** out);
LS_API void ls_instance_free(ls_instance* instance);
LS_API size_t ls_instance_size(const ls_instance* instance);
LS_API double ls_instance_lambda(const ls_instance* instance);

/* Exhaustive lambda-triangle check (off-ledger). *ok is 1 when every triple
 * passes; otherwise the first violating (a, b, c) is written to triple. */
LS_API ls_status ls_instance_validate(const ls_instance* instance, size_t cap, int* ok,
                                      uint32_t triple[3]);

/* Query ledgers */
LS_API ls_status ls_ledger_new(uint64_t budget, ls_ledger** out);
LS_API void ls_ledger_free(ls_ledger* ledger);
LS_API uint64_t ls_ledger_count(const ls_ledger* ledger);
LS_API void ls_ledger_reset(ls_ledger* ledger);

LS_API ls_status ls_query(const ls_instance* instance, uint32_t u, uint32_t v,
                          ls_ledger* ledger, double* weight);

/* Sampling */
LS_API ls_status ls_sample(const ls_instance* instance, const ls_sampler_config* config,
                           ls_ledger* ledger, ls_sampled_graph** out);
LS_API ls_status ls_uniform_sample(const ls_instance* instance, double p, uint64_t seed,
                                   ls_ledger* ledger, ls_sampled_graph** out);
LS_API void ls_sampled_graph_free(ls_sampled_graph* graph);
LS_API size_t ls_sampled_graph_vertex_count(const ls_sampled_graph* graph);
LS_API size_t ls_sampled_graph_edge_count(const ls_sampled_graph* graph);
LS_API double ls_sampled_graph_alpha(const ls_sampled_graph* graph);
LS_API uint64_t ls_sampled_graph_queries(const ls_sampled_graph* graph);
LS_API ls_status ls_sampled_graph_edge(const ls_sampled_graph* graph, size_t index,
                                       uint32_t* u, uint32_t* v, double* weight);
LS_API ls_status ls_sampled_graph_average(const ls_sampled_graph* graph, double* estimate);
LS_API ls_status ls_sampled_graph_write(const ls_sampled_graph* graph, const char* csv_path,
                                        const char* sidecar_path);

/* Experiments. command is one of "sample", "solve", "bench-queries",
 * "appendix-demo", "hardness-demo"; params_json is a JSON object. The report
 * (JSON, or CSV when as_csv is non-zero) is returned in *report and must be
 * released with ls_string_free. *passed reports the assertions. */
LS_API ls_status ls_run_experiment(const char* command, const char* params_json, int as_csv,
                                   char** report, int* passed);
LS_API void ls_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* LINSAMPLE_LINSAMPLE_H_ */
