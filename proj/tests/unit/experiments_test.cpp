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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "linsample/error.hpp"
#include "linsample/experiments.hpp"
#include "linsample/sampler.hpp"

namespace linsample {
namespace {

const std::string kData = LINSAMPLE_TEST_DATA;

std::vector<double> column(const Json& trials, const char* key) {
  std::vector<double> out;
  for (const auto& t : trials) {
    if (t.contains(key) && t[key].is_number()) out.push_back(t[key].get<double>());
  }
  return out;
}

TEST(Summarize, MeanAndSampleStddev) {
  const Json s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s["mean"].get<double>(), 2.5);
  EXPECT_DOUBLE_EQ(s["stddev"].get<double>(), std::sqrt(5.0 / 3.0));
  EXPECT_EQ(s["count"].get<int>(), 4);
  EXPECT_TRUE(summarize({})["mean"].is_null());
}

TEST(TrialSeed, DistinctAndStable) {
  EXPECT_EQ(trial_seed(1, 2), trial_seed(1, 2));
  EXPECT_NE(trial_seed(1, 2), trial_seed(1, 3));
  EXPECT_NE(trial_seed(1, 2), trial_seed(2, 2));
}

TEST(Solve, AverageOnLineFile) {
  const Json params{{"instance", "euclidean:" + kData + "/line500.csv"},
                    {"problem", "avg"},
                    {"epsilon", 0.1},
                    {"trials", 20},
                    {"seed", 3}};
  const auto r = run_experiment("solve", params);
  const Json& rep = r.report;
  EXPECT_EQ(rep["experiment"], "solve");
  EXPECT_EQ(rep["trials"].size(), 20u);
  const double rate = rep["aggregate"]["success_rate"].get<double>();
  EXPECT_GE(rate, 0.9);
  EXPECT_LE(rate, 1.0);
  EXPECT_TRUE(r.passed);
  for (const auto& t : rep["trials"]) EXPECT_NEAR(t["exact_value"].get<double>(), 501.0 / 3.0, 1e-9);
}

TEST(Solve, ReportIsReproducible) {
  const Json params{{"instance", "uniform:60:2:1"},
                    {"problem", "maxcut"},
                    {"epsilon", 0.3},
                    {"trials", 5},
                    {"seed", 11},
                    {"constants", {{"c_sample", 16}}}};
  EXPECT_EQ(run_experiment("solve", params).report.dump(),
            run_experiment("solve", params).report.dump());
}

TEST(Solve, AggregatesRecomputeFromTrials) {
  const Json params{{"instance", "uniform:16:2:4"},
                    {"problem", "densest"},
                    {"epsilon", 0.3},
                    {"trials", 12},
                    {"seed", 5}};
  const auto r = run_experiment("solve", params);
  const Json& rep = r.report;
  const Json& agg = rep["aggregate"];
  EXPECT_EQ(summarize(column(rep["trials"], "queries_algorithm")), agg["queries_algorithm"]);
  EXPECT_EQ(summarize(column(rep["trials"], "queries_evaluation")), agg["queries_evaluation"]);
  EXPECT_EQ(summarize(column(rep["trials"], "value_in_G")), agg["value_in_G"]);
  EXPECT_EQ(summarize(column(rep["trials"], "value_in_H")), agg["value_in_H"]);
  std::size_t ok = 0;
  for (const auto& t : rep["trials"]) ok += t["success"].get<bool>() ? 1 : 0;
  EXPECT_EQ(agg["success_rate"].get<double>(), static_cast<double>(ok) / 12.0);
  EXPECT_TRUE(rep["trials"][0].contains("exact_value"));
  EXPECT_FALSE(rep["parameters"]["constants"]["guarantee_void"].get<bool>());
}

TEST(Solve, MaxCutSingleEdge) {
  const std::string path = kData + "/edge5.csv";
  const Json params{{"instance", "matrix:" + path + ":1"}, {"problem", "maxcut"}, {"epsilon", 0.2}};
  const auto r = run_experiment("solve", params);
  EXPECT_DOUBLE_EQ(r.report["trials"][0]["value_in_G"].get<double>(), 5.0);
}

TEST(Solve, OverridesAreFlagged) {
  const Json params{{"instance", "uniform:40:2:1"},
                    {"problem", "avg"},
                    {"beta", 30.0},
                    {"constants", {{"c_sample", 16}}}};
  const auto rep = run_experiment("solve", params).report;
  EXPECT_TRUE(rep["parameters"]["constants"]["guarantee_void"].get<bool>());
  EXPECT_TRUE(rep["parameters"]["beta_overridden"].get<bool>());
  EXPECT_TRUE(rep["parameters"]["guarantee_void"].get<bool>());
  EXPECT_DOUBLE_EQ(rep["parameters"]["constants"]["c_sample"].get<double>(), 16.0);
}

TEST(Solve, Errors) {
  EXPECT_THROW(run_experiment("solve", Json{{"problem", "avg"}}), Error);
  EXPECT_THROW(run_experiment("solve", Json{{"instance", "g1:30"}, {"problem", "avg"}}), Error);
  EXPECT_THROW(run_experiment("solve", Json{{"instance", "line:10"}, {"trials", 0}}), Error);
  EXPECT_THROW(run_experiment("solve", Json{{"instance", "line:10"}, {"problem", "nope"}}), Error);
  EXPECT_THROW(run_experiment("teleport", Json::object()), Error);
  EXPECT_THROW(run_experiment("solve", Json{{"instance", "line:10"}, {"constants", {{"c_sample", -1}}}}),
               Error);
}

TEST(Sample, WritesCsvAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "linsample_experiments_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "h.csv").string();
  const auto r = run_experiment("sample", Json{{"instance", "g2:100:7"}, {"beta", 50.0}, {"out", out}});
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_TRUE(std::filesystem::exists(dir / "h.json"));
  const auto h = read_sampled_graph(out, (dir / "h.json").string());
  EXPECT_EQ(h.n, 100u);
  EXPECT_DOUBLE_EQ(*h.beta, 50.0);
  EXPECT_EQ(r.report["aggregate"]["edges"].get<std::size_t>(), h.edges.size());
  std::filesystem::remove_all(dir);
}

TEST(Sample, G2MeanWeightInSandwich) {
  double sum = 0.0;
  constexpr int kSeeds = 300;
  for (int s = 0; s < kSeeds; ++s) {
    const auto r = run_experiment("sample", Json{{"instance", "g2:100:7"}, {"beta", 50.0}, {"seed", s}});
    sum += r.report["aggregate"]["total_weight"].get<double>();
  }
  EXPECT_GE(sum / kSeeds, 50.0 * 0.95);
  EXPECT_LE(sum / kSeeds, 100.0 * 1.05);
}

TEST(Sample, G1IsDegenerate) {
  try {
    run_experiment("sample", Json{{"instance", "g1:100"}, {"beta", 50.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInstance);
  }
}

TEST(Sample, StarAlphaBranch) {
  // alpha (n/2 + 1) = 0.51 <= 1: every stored edge has weight 1.
  const auto r = run_experiment("sample", Json{{"instance", "star:100"}, {"alpha", 0.01}, {"seed", 4}});
  for (std::size_t i = 1; i < r.csv.size(); ++i) EXPECT_EQ(r.csv[i][2], "1");
}

TEST(Bench, TinyAndDegenerate) {
  const auto two = run_experiment("bench-queries",
                                  Json{{"family", "line"}, {"sizes", {2}}, {"seeds", 2}});
  EXPECT_GE(two.report["aggregate"]["per_size"][0]["queries"]["mean"].get<double>(), 1.0);
  const auto g1 = run_experiment("bench-queries",
                                 Json{{"family", "g1"}, {"sizes", {64, 128}}, {"seeds", 2}});
  EXPECT_TRUE(g1.report["assertions"].empty());
  EXPECT_EQ(g1.report["trials"].size(), 4u);
}

TEST(Bench, CsvHasHeaderAndRows) {
  const auto r = run_experiment("bench-queries", Json{{"family", "euclidean"},
                                                      {"sizes", {64, 128}},
                                                      {"seeds", 2},
                                                      {"constants", {{"c_sample", 16}}}});
  ASSERT_GE(r.csv.size(), 3u);
  EXPECT_EQ(r.csv[0], (std::vector<std::string>{"n", "queries"}));
}

TEST(Appendix, FullProbabilitySeesEveryPair) {
  const auto r = run_experiment("appendix-demo", Json{{"n", 20}, {"p", 1.0}, {"trials", 3}, {"epsilon", 0.3}});
  for (const auto& t : r.report["trials"]) {
    EXPECT_EQ(t["uniform"]["sampled_edges"].get<std::size_t>(), 190u);
    EXPECT_GE(t["uniform"]["value_in_G"].get<double>(), 0.5 * 19.0);
  }
}

TEST(Appendix, ReportShape) {
  const auto r = run_experiment("appendix-demo", Json{{"n", 40}, {"p", 0.05}, {"trials", 10}, {"epsilon", 0.2}});
  const Json& agg = r.report["aggregate"];
  EXPECT_EQ(r.report["trials"].size(), 10u);
  EXPECT_DOUBLE_EQ(agg["uniform_bound"].get<double>(), (0.5 + 4 * 0.05) * 40 + 0.5);
  EXPECT_DOUBLE_EQ(agg["optimum"].get<double>(), 39.0);
  EXPECT_TRUE(agg.contains("separation"));
}

TEST(Hardness, FullBudgetAlwaysRight) {
  const auto r = run_experiment("hardness-demo", Json{{"n", 30}, {"delta", 100.0}, {"trials", 50}});
  EXPECT_DOUBLE_EQ(r.report["aggregate"]["accuracy"].get<double>(), 1.0);
}

TEST(Hardness, ZeroBudgetIsBlindGuess) {
  const auto r = run_experiment("hardness-demo", Json{{"n", 1000}, {"delta", 0.0}, {"trials", 400}});
  EXPECT_EQ(r.report["parameters"]["budget"].get<int>(), 0);
  const double acc = r.report["aggregate"]["accuracy"].get<double>();
  EXPECT_NEAR(acc, 0.5, 4 * std::sqrt(0.25 / 400));
  EXPECT_TRUE(r.passed);
}

TEST(Hardness, Reproducible) {
  const Json p{{"n", 500}, {"delta", 0.1}, {"trials", 50}, {"seed", 9}};
  EXPECT_EQ(run_experiment("hardness-demo", p).report.dump(),
            run_experiment("hardness-demo", p).report.dump());
}

}  // namespace
}  // namespace linsample
