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

// Exercises the shared library through its C header only.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>

#include <gtest/gtest.h>

#include "linsample/linsample.h"

namespace {

struct InstanceDeleter {
  void operator()(ls_instance* p) const { ls_instance_free(p); }
};
struct LedgerDeleter {
  void operator()(ls_ledger* p) const { ls_ledger_free(p); }
};
struct GraphDeleter {
  void operator()(ls_sampled_graph* p) const { ls_sampled_graph_free(p); }
};
using Instance = std::unique_ptr<ls_instance, InstanceDeleter>;
using Ledger = std::unique_ptr<ls_ledger, LedgerDeleter>;
using Graph = std::unique_ptr<ls_sampled_graph, GraphDeleter>;

Instance spec(const char* s) {
  ls_instance* raw = nullptr;
  EXPECT_EQ(ls_instance_from_spec(s, &raw), LS_OK) << ls_last_error();
  return Instance(raw);
}

Ledger ledger(uint64_t budget = LS_UNLIMITED) {
  ls_ledger* raw = nullptr;
  EXPECT_EQ(ls_ledger_new(budget, &raw), LS_OK);
  return Ledger(raw);
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(ls_version(), "1.0.0");
  EXPECT_STREQ(ls_status_name(LS_OK), "ok");
  EXPECT_STREQ(ls_status_name(LS_UNKNOWN), "unknown");
  EXPECT_STRNE(ls_status_name(LS_CAP_EXCEEDED), "unknown");
}

TEST(CApi, QueryCountsAndBudget) {
  auto line = spec("line:4");
  EXPECT_EQ(ls_instance_size(line.get()), 4u);
  EXPECT_DOUBLE_EQ(ls_instance_lambda(line.get()), 1.0);
  auto led = ledger(1);
  double w = 0.0;
  ASSERT_EQ(ls_query(line.get(), 0, 3, led.get(), &w), LS_OK);
  EXPECT_DOUBLE_EQ(w, 3.0);
  EXPECT_EQ(ls_ledger_count(led.get()), 1u);
  EXPECT_EQ(ls_query(line.get(), 1, 2, led.get(), &w), LS_BUDGET_EXHAUSTED);
  EXPECT_STRNE(ls_last_error(), "");
  ls_ledger_reset(led.get());
  EXPECT_EQ(ls_ledger_count(led.get()), 0u);
  EXPECT_EQ(ls_query(line.get(), 2, 2, led.get(), &w), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_query(line.get(), 0, 9, led.get(), &w), LS_INVALID_ARGUMENT);
}

TEST(CApi, PointsMatrixAndPower) {
  const double coords[] = {0.0, 0.0, 3.0, 4.0};
  ls_instance* pts = nullptr;
  ASSERT_EQ(ls_instance_from_points(coords, 2, 2, &pts), LS_OK);
  Instance p(pts);
  auto led = ledger();
  double w = 0.0;
  ASSERT_EQ(ls_query(p.get(), 0, 1, led.get(), &w), LS_OK);
  EXPECT_DOUBLE_EQ(w, 5.0);

  ls_instance* sq = nullptr;
  ASSERT_EQ(ls_instance_power(p.get(), 2.0, &sq), LS_OK);
  Instance squared(sq);
  ASSERT_EQ(ls_query(squared.get(), 0, 1, led.get(), &w), LS_OK);
  EXPECT_DOUBLE_EQ(w, 25.0);
  EXPECT_DOUBLE_EQ(ls_instance_lambda(squared.get()), 0.25);
  EXPECT_EQ(ls_instance_power(p.get(), 0.0, &sq), LS_INVALID_ARGUMENT);

  const double bad[] = {0, 10, 1, 10, 0, 1, 1, 1, 0};
  ls_instance* m = nullptr;
  ASSERT_EQ(ls_instance_from_matrix(bad, 3, 1.0, &m), LS_OK);
  Instance mat(m);
  int ok = 1;
  uint32_t triple[3] = {9, 9, 9};
  ASSERT_EQ(ls_instance_validate(mat.get(), 500, &ok, triple), LS_OK);
  EXPECT_EQ(ok, 0);
  EXPECT_NE(triple[0], 9u);

  const double asym[] = {0, 1, 2, 0};
  EXPECT_EQ(ls_instance_from_matrix(asym, 2, 1.0, &m), LS_INVALID_ARGUMENT);
}

TEST(CApi, ValidateCapAndPass) {
  auto line = spec("line:30");
  int ok = 0;
  EXPECT_EQ(ls_instance_validate(line.get(), 10, &ok, nullptr), LS_CAP_EXCEEDED);
  ASSERT_EQ(ls_instance_validate(line.get(), 500, &ok, nullptr), LS_OK);
  EXPECT_EQ(ok, 1);
}

TEST(CApi, SampleG2) {
  auto g2 = spec("g2:100:7");
  ls_sampler_config cfg;
  ls_sampler_config_init(&cfg);
  EXPECT_EQ(cfg.has_beta, 0);
  EXPECT_DOUBLE_EQ(cfg.gamma, 2.0);
  cfg.has_beta = 1;
  cfg.beta = 50.0;
  cfg.seed = 3;
  auto led = ledger();
  ls_sampled_graph* raw = nullptr;
  ASSERT_EQ(ls_sample(g2.get(), &cfg, led.get(), &raw), LS_OK) << ls_last_error();
  Graph h(raw);
  EXPECT_EQ(ls_sampled_graph_vertex_count(h.get()), 100u);
  EXPECT_GT(ls_sampled_graph_alpha(h.get()), 0.0);
  EXPECT_EQ(ls_sampled_graph_queries(h.get()), ls_ledger_count(led.get()));
  // Every stored edge of a hub graph touches the hub.
  uint32_t hub_a = 0, hub_b = 0;
  ASSERT_GT(ls_sampled_graph_edge_count(h.get()), 1u);
  ASSERT_EQ(ls_sampled_graph_edge(h.get(), 0, &hub_a, &hub_b, nullptr), LS_OK);
  double total = 0.0;
  for (size_t i = 0; i < ls_sampled_graph_edge_count(h.get()); ++i) {
    uint32_t u = 0, v = 0;
    double w = 0.0;
    ASSERT_EQ(ls_sampled_graph_edge(h.get(), i, &u, &v, &w), LS_OK);
    EXPECT_LT(u, v);
    EXPECT_TRUE(u == hub_a || v == hub_a || u == hub_b || v == hub_b);
    total += w;
  }
  double est = 0.0;
  ASSERT_EQ(ls_sampled_graph_average(h.get(), &est), LS_OK);
  EXPECT_DOUBLE_EQ(est, total / (ls_sampled_graph_alpha(h.get()) * 4950.0));
  EXPECT_EQ(ls_sampled_graph_edge(h.get(), 1u << 20, nullptr, nullptr, nullptr),
            LS_INVALID_ARGUMENT);

  const auto dir = std::filesystem::temp_directory_path() / "linsample_capi_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "h.csv").string();
  const std::string side = (dir / "h.json").string();
  ASSERT_EQ(ls_sampled_graph_write(h.get(), csv.c_str(), side.c_str()), LS_OK);
  EXPECT_TRUE(std::filesystem::exists(csv));
  EXPECT_TRUE(std::filesystem::exists(side));
  EXPECT_EQ(ls_sampled_graph_write(h.get(), "/nonexistent/dir/h.csv", side.c_str()), LS_IO);
  std::filesystem::remove_all(dir);
}

TEST(CApi, SampleErrors) {
  auto g1 = spec("g1:50");
  ls_sampler_config cfg;
  ls_sampler_config_init(&cfg);
  cfg.has_beta = 1;
  cfg.beta = 10.0;
  auto led = ledger();
  ls_sampled_graph* raw = nullptr;
  EXPECT_EQ(ls_sample(g1.get(), &cfg, led.get(), &raw), LS_DEGENERATE_INSTANCE);
  EXPECT_EQ(raw, nullptr);

  auto line = spec("line:10");
  EXPECT_EQ(ls_sample(line.get(), &cfg, ledger(3).get(), &raw), LS_BUDGET_EXHAUSTED);
  cfg.gamma = 1.0;
  EXPECT_EQ(ls_sample(line.get(), &cfg, led.get(), &raw), LS_INVALID_ARGUMENT);
}

TEST(CApi, UniformSample) {
  auto line = spec("line:5");
  auto led = ledger();
  ls_sampled_graph* raw = nullptr;
  ASSERT_EQ(ls_uniform_sample(line.get(), 1.0, 0, led.get(), &raw), LS_OK);
  Graph h(raw);
  EXPECT_EQ(ls_sampled_graph_edge_count(h.get()), 10u);
  EXPECT_EQ(ls_ledger_count(led.get()), 10u);
  EXPECT_EQ(ls_uniform_sample(line.get(), 1.5, 0, led.get(), &raw), LS_INVALID_ARGUMENT);
}

TEST(CApi, RunExperiment) {
  char* report = nullptr;
  int passed = 0;
  ASSERT_EQ(ls_run_experiment("hardness-demo", R"({"n": 200, "delta": 0.1, "trials": 20})", 0,
                              &report, &passed),
            LS_OK)
      << ls_last_error();
  ASSERT_NE(report, nullptr);
  EXPECT_NE(std::string(report).find("\"experiment\": \"hardness-demo\""), std::string::npos);
  ls_string_free(report);

  ASSERT_EQ(ls_run_experiment("sample", R"({"instance": "line:6", "beta": 5})", 1, &report,
                              &passed),
            LS_OK);
  EXPECT_EQ(std::string(report).rfind("u,v,weight\n", 0), 0u);
  EXPECT_EQ(passed, 1);
  ls_string_free(report);

  EXPECT_EQ(ls_run_experiment("solve", "{not json", 0, &report, &passed), LS_PARSE);
  EXPECT_EQ(report, nullptr);
  EXPECT_EQ(ls_run_experiment("teleport", "{}", 0, &report, &passed), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_run_experiment("sample", R"({"instance": "nope:3"})", 0, &report, &passed),
            LS_PARSE);
}

TEST(CApi, NullArguments) {
  ls_instance* inst = nullptr;
  EXPECT_EQ(ls_instance_from_spec(nullptr, &inst), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_instance_from_spec("line:3", nullptr), LS_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ls_last_error()).find("null"), std::string::npos);
  EXPECT_EQ(ls_instance_from_points(nullptr, 2, 1, &inst), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_instance_from_matrix(nullptr, 2, 1.0, &inst), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_instance_power(nullptr, 1.0, &inst), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_ledger_new(0, nullptr), LS_INVALID_ARGUMENT);
  double w = 0.0;
  EXPECT_EQ(ls_query(nullptr, 0, 1, nullptr, &w), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_sample(nullptr, nullptr, nullptr, nullptr), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_sampled_graph_average(nullptr, &w), LS_INVALID_ARGUMENT);
  EXPECT_EQ(ls_run_experiment(nullptr, "{}", 0, nullptr, nullptr), LS_INVALID_ARGUMENT);
  int ok = 0;
  EXPECT_EQ(ls_instance_validate(nullptr, 10, &ok, nullptr), LS_INVALID_ARGUMENT);

  EXPECT_EQ(ls_instance_size(nullptr), 0u);
  EXPECT_EQ(ls_ledger_count(nullptr), 0u);
  EXPECT_EQ(ls_sampled_graph_edge_count(nullptr), 0u);
  ls_instance_free(nullptr);
  ls_ledger_free(nullptr);
  ls_sampled_graph_free(nullptr);
  ls_string_free(nullptr);
  ls_ledger_reset(nullptr);
  ls_sampler_config_init(nullptr);
}

}  // namespace
