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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "linsample/error.hpp"
#include "linsample/instance_io.hpp"
#include "linsample/oracle.hpp"
#include "linsample/rng.hpp"

namespace linsample {
namespace {

const std::string kData = LINSAMPLE_TEST_DATA;

MetricInstance line3() { return make_euclidean({0.0, 1.0, 2.0}, 1); }

// Index of the hub of a G2 instance, found by reading its weights.
std::size_t hidden_hub(const MetricInstance& g2) {
  const std::size_t n = g2.size();
  QueryLedger ledger;
  for (VertexId v = 0; v < n; ++v) {
    std::size_t heavy = 0;
    for (VertexId u = 0; u < n; ++u) {
      if (u != v && g2.query(u, v, ledger) == 1.0) ++heavy;
    }
    if (heavy == n - 1) return v;
  }
  return n;
}

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << error_code_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(WeightQuery, LineDistanceAndCounting) {
  const auto inst = line3();
  QueryLedger ledger;
  EXPECT_DOUBLE_EQ(weight_query(inst, 0, 2, ledger), 2.0);
  EXPECT_EQ(ledger.count(), 1u);
  const double a = weight_query(inst, 1, 2, ledger);
  const double b = weight_query(inst, 1, 2, ledger);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ledger.count(), 3u);
}

TEST(WeightQuery, RejectsSelfAndOutOfRange) {
  const auto inst = line3();
  QueryLedger ledger;
  expect_code(ErrorCode::kInvalidArgument, [&] { inst.query(1, 1, ledger); });
  expect_code(ErrorCode::kInvalidArgument, [&] { inst.query(0, 3, ledger); });
  EXPECT_EQ(ledger.count(), 0u);
}

TEST(WeightQuery, G2HubEdges) {
  // Find a seed whose hidden index is 3 at n=5.
  std::uint64_t seed = 0;
  while (hidden_hub(make_hardness_pair(5, seed).second) != 3) ++seed;
  const auto g2 = make_hardness_pair(5, seed).second;
  QueryLedger ledger;
  EXPECT_EQ(g2.query(3, 0, ledger), 1.0);
  EXPECT_EQ(g2.query(0, 1, ledger), 0.0);
}

TEST(QueryLedger, BudgetRefusesBeforeCounting) {
  const auto inst = line3();
  QueryLedger ledger(2);
  inst.query(0, 1, ledger);
  inst.query(0, 2, ledger);
  expect_code(ErrorCode::kBudgetExhausted, [&] { inst.query(1, 2, ledger); });
  EXPECT_EQ(ledger.count(), 2u);
  ledger.reset();
  EXPECT_EQ(ledger.count(), 0u);
}

TEST(Validate, EuclideanIsMetric) {
  EXPECT_FALSE(validate_lambda_metric(make_uniform_points(40, 3, 7)).has_value());
  EXPECT_FALSE(validate_lambda_metric(line3()).has_value());
}

TEST(Validate, SquaredEuclideanAtQuarter) {
  const auto sq = power_wrap(make_uniform_points(40, 2, 3), 2.0);
  EXPECT_DOUBLE_EQ(sq.lambda(), 0.25);
  EXPECT_FALSE(validate_lambda_metric(sq).has_value());
}

TEST(Validate, ViolatingMatrixReportsGenuineTriple) {
  const auto inst = load_matrix_csv(kData + "/violating3.csv", 1.0);
  const auto bad = validate_lambda_metric(inst);
  ASSERT_TRUE(bad.has_value());
  QueryLedger ledger;
  const double ab = inst.query(bad->a, bad->b, ledger);
  const double bc = inst.query(bad->b, bad->c, ledger);
  const double ca = inst.query(bad->c, bad->a, ledger);
  EXPECT_LT(ab + bc, ca);
  // The heavy pair (0,1) is the side that breaks the inequality.
  EXPECT_EQ(ca, 10.0);
}

TEST(Validate, PowerOfViolatingMatrixStillFails) {
  const auto inst = power_wrap(load_matrix_csv(kData + "/violating3.csv", 1.0), 2.0);
  EXPECT_TRUE(validate_lambda_metric(inst).has_value());
}

TEST(Validate, CapIsEnforcedAndLedgerUntouched) {
  expect_code(ErrorCode::kCapExceeded,
              [] { validate_lambda_metric(make_line(600)); });
  ValidateOptions opts;
  opts.cap = 1000;
  EXPECT_FALSE(validate_lambda_metric(make_line(30), opts).has_value());
}

TEST(Validate, ZeroWeightsAllowed) {
  const auto [g1, g2] = make_hardness_pair(12, 4);
  EXPECT_FALSE(validate_lambda_metric(g1).has_value());
  EXPECT_FALSE(validate_lambda_metric(g2).has_value());
}

TEST(HardnessPair, AverageOfG2) {
  const auto g2 = make_hardness_pair(5, 11).second;
  const auto w = read_all_weights(g2);
  double s = 0.0;
  for (double x : w) s += x;
  EXPECT_DOUBLE_EQ(s / 10.0, 2.0 / 5.0);
}

TEST(HardnessPair, G1IsAllZeroAndSeedReproducible) {
  const auto [g1, g2] = make_hardness_pair(30, 99);
  for (double x : read_all_weights(g1)) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(hidden_hub(g2), hidden_hub(make_hardness_pair(30, 99).second));
}

TEST(HardnessPair, RejectsTinyN) {
  expect_code(ErrorCode::kInvalidArgument, [] { make_hardness_pair(1, 0); });
}

TEST(HardnessPair, HiddenIndexIsUniform) {
  constexpr std::size_t kN = 10;
  constexpr std::size_t kRuns = 10000;
  std::vector<std::size_t> freq(kN, 0);
  for (std::uint64_t s = 0; s < kRuns; ++s) ++freq[hidden_hub(make_hardness_pair(kN, s).second)];
  const double p = 1.0 / kN;
  const double sigma = std::sqrt(p * (1 - p) / kRuns);
  for (std::size_t r = 0; r < kN; ++r) {
    EXPECT_NEAR(static_cast<double>(freq[r]) / kRuns, p, 4 * sigma) << "index " << r;
  }
}

TEST(AppendixStar, Weights) {
  const auto s = make_appendix_star(4);
  QueryLedger ledger;
  EXPECT_EQ(s.query(0, 1, ledger), 3.0);
  EXPECT_EQ(s.query(1, 2, ledger), 1.0);
  EXPECT_FALSE(validate_lambda_metric(make_appendix_star(10)).has_value());
  expect_code(ErrorCode::kInvalidArgument, [] { make_appendix_star(2); });
}

TEST(AppendixStar, OddNHasRealHubWeight) {
  QueryLedger ledger;
  EXPECT_DOUBLE_EQ(make_appendix_star(7).query(0, 5, ledger), 4.5);
}

TEST(PowerWrap, IdentityExponentHalvesLambda) {
  const auto inner = line3();
  const auto p1 = power_wrap(inner, 1.0);
  EXPECT_DOUBLE_EQ(p1.lambda(), 0.5);
  QueryLedger ledger;
  EXPECT_EQ(p1.query(0, 2, ledger), 2.0);
}

TEST(PowerWrap, SquareOnLine) {
  const auto p2 = power_wrap(line3(), 2.0);
  QueryLedger ledger;
  EXPECT_DOUBLE_EQ(p2.query(0, 2, ledger), 4.0);
  EXPECT_EQ(ledger.count(), 1u);
  EXPECT_DOUBLE_EQ(p2.lambda(), 0.25);
}

TEST(PowerWrap, RejectsNonPositiveExponent) {
  expect_code(ErrorCode::kInvalidArgument, [] { power_wrap(line3(), 0.0); });
  expect_code(ErrorCode::kInvalidArgument, [] { power_wrap(line3(), -1.0); });
}

TEST(PowerWrap, DeclaredLambdaHoldsForSmallInnerLambda) {
  // A 0.3-metric: w(0,1)=w(1,2)=1, w(0,2)=6.6 gives 2 >= 0.3*6.6 (tight-ish).
  const auto inner = make_matrix(3, {0, 1, 6.6, 1, 0, 1, 6.6, 1, 0}, 0.3);
  ASSERT_FALSE(validate_lambda_metric(inner).has_value());
  for (double p : {1.5, 2.0, 3.0}) {
    EXPECT_FALSE(validate_lambda_metric(power_wrap(inner, p)).has_value()) << "p=" << p;
  }
}

TEST(MatrixBackend, RejectsAsymmetricFile) {
  expect_code(ErrorCode::kInvalidArgument,
              [] { load_matrix_csv(kData + "/asymmetric.csv", 1.0); });
}

TEST(Symmetry, RandomPairsPerBackend) {
  std::vector<MetricInstance> backends = {
      make_uniform_points(200, 3, 1), load_matrix_csv(kData + "/line4.csv", 1.0),
      make_hardness_pair(200, 5).second, make_appendix_star(200),
      power_wrap(make_uniform_points(200, 2, 9), 2.0)};
  Rng rng(2024);
  for (const auto& inst : backends) {
    QueryLedger ledger;
    const std::size_t n = inst.size();
    for (int i = 0; i < 10000; ++i) {
      const auto u = static_cast<VertexId>(rng.below(n));
      auto v = static_cast<VertexId>(rng.below(n - 1));
      if (v >= u) ++v;
      const double a = inst.query(u, v, ledger);
      ASSERT_EQ(a, inst.query(v, u, ledger)) << inst.describe();
      ASSERT_GE(a, 0.0);
    }
    EXPECT_EQ(ledger.count(), 20000u);
  }
}

TEST(InstanceSpec, Kinds) {
  EXPECT_EQ(parse_instance_spec("euclidean:" + kData + "/line500.csv").size(), 500u);
  EXPECT_EQ(parse_instance_spec("g2:100:7").size(), 100u);
  EXPECT_EQ(parse_instance_spec("g1:50").size(), 50u);
  EXPECT_EQ(parse_instance_spec("star:100").size(), 100u);
  EXPECT_EQ(parse_instance_spec("uniform:30:2:4").size(), 30u);
  EXPECT_DOUBLE_EQ(parse_instance_spec("pow:line:10:2").lambda(), 0.25);
  EXPECT_DOUBLE_EQ(parse_instance_spec("matrix:" + kData + "/line4.csv:0.5").lambda(), 0.5);
}

TEST(InstanceSpec, Errors) {
  expect_code(ErrorCode::kParse, [] { parse_instance_spec("nothing"); });
  expect_code(ErrorCode::kParse, [] { parse_instance_spec("torus:4"); });
  expect_code(ErrorCode::kParse, [] { parse_instance_spec("g2:10"); });
  expect_code(ErrorCode::kIo, [] { parse_instance_spec("euclidean:/no/such/file.csv"); });
}

}  // namespace
}  // namespace linsample
