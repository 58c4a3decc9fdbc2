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

/// \file experiments.hpp
/// \brief Seeded experiment drivers that produce JSON reports.
///
/// A report has the shape
///   { experiment, instance, parameters, trials: [...], aggregate: {...},
///     assertions: [{name, passed, observed, bound}], passed }
/// and carries no timestamps, so identical inputs give identical bytes.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "linsample/decompose.hpp"

namespace linsample {

using Json = nlohmann::ordered_json;

struct ExperimentResult {
  Json report;
  bool passed = true;
  /// Flat rows for --csv output (first row is the header).
  std::vector<std::vector<std::string>> csv;
};

struct SampleParams {
  std::string instance;
  std::optional<double> beta;
  std::optional<double> alpha;
  double gamma = 2.0;
  std::uint64_t seed = 0;
  DecompositionConstants constants;
  std::string out;  ///< CSV path; the sidecar goes next to it (.json)
};

struct SolveParams {
  std::string instance;
  std::string problem = "avg";
  double epsilon = 0.1;
  double gamma = 2.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  DecompositionConstants constants;
  std::optional<double> beta_override;
  std::size_t maxcut_restarts = 8;
  /// Required success rate for the report assertion.
  double required_rate = 0.9;
};

struct BenchParams {
  std::string family = "euclidean";  ///< euclidean, line, star, g1, g2
  std::vector<std::size_t> sizes = {512, 1024, 2048};
  std::string beta_rule = "nlogn";   ///< nlogn, n, const:<beta>
  std::size_t seeds = 5;
  std::uint64_t seed = 0;
  double gamma = 2.0;
  DecompositionConstants constants;
  double max_ratio = 3.0;
};

struct AppendixParams {
  std::size_t n = 100;
  double p = 0.05;
  double epsilon = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double gamma = 2.0;
  DecompositionConstants constants;
  double required_rate = 0.9;
};

struct HardnessParams {
  std::size_t n = 10000;
  double delta = 0.1;
  double epsilon = 0.1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  DecompositionConstants constants;
};

ExperimentResult run_sample(const SampleParams& params);
ExperimentResult run_solve(const SolveParams& params);
ExperimentResult run_bench_queries(const BenchParams& params);
ExperimentResult run_appendix_demo(const AppendixParams& params);
ExperimentResult run_hardness_demo(const HardnessParams& params);

/// Dispatch by command name ("sample", "solve", "bench-queries",
/// "appendix-demo", "hardness-demo") with parameters given as JSON.
ExperimentResult run_experiment(const std::string& command, const Json& params);

/// Seed of trial `index` under a base seed.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Mean, sample standard deviation over the values.
Json summarize(const std::vector<double>& values);

}  // namespace linsample
