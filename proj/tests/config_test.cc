// Copyright 2026 The HDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hdp/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace hdp {
namespace {

using ::hdp::testing::CodeOf;
using ::hdp::testing::Unwrap;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(ParseSimulationConfigTest, ReadsKeysCommentsAndBlankLines) {
  const SimulationConfig c = Unwrap(ParseSimulationConfig(
      "# header comment\n"
      "\n"
      "name = custom run\n"
      "n = 250   # inline comment\n"
      "reps=12\n"
      "epsilon_grid = 2, 0.6 ,0.2\n"
      "algo = nr\n"
      "K = auto\n"
      "eta = 0.25\n"
      "seed = 18446744073709551615\n"
      "alpha_grid = 0, 0.3\n"
      "threshold = off\n"
      "bandwidth = 0.4\n"
      "truncation = 8\n"
      "correction = verbatim\n"
      "cov_mode = sandwich\n"
      "start = moments\n"
      "include_mle = yes\n"
      "n_grid = 50,100\n"
      "sensitivity = weak\n"
      "weak_constant = 2.5\n",
      "inline"));
  EXPECT_EQ(c.name, "custom run");
  EXPECT_EQ(c.n, 250u);
  EXPECT_EQ(c.reps, 12);
  EXPECT_THAT(c.epsilon_grid, ElementsAre(2.0, 0.6, 0.2));
  EXPECT_EQ(c.algorithm, Algorithm::kNewtonRaphson);
  EXPECT_FALSE(c.iterations.has_value());
  EXPECT_EQ(c.learning_rate, 0.25);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_THAT(c.alpha_grid, ElementsAre(0.0, 0.3));
  EXPECT_FALSE(c.threshold);
  EXPECT_EQ(c.bandwidth, BandwidthMode::kFixed);
  EXPECT_EQ(c.bandwidth_value, 0.4);
  EXPECT_EQ(c.truncation, 8.0);
  EXPECT_EQ(c.correction, CorrectionMode::kVerbatim);
  EXPECT_EQ(c.cov_mode, CovarianceMode::kSandwich);
  EXPECT_EQ(c.start, StartMode::kMoments);
  EXPECT_TRUE(c.include_mle);
  EXPECT_THAT(c.n_grid, ElementsAre(50u, 100u));
  EXPECT_EQ(c.regime, SensitivityRegime::kWeak);
  EXPECT_EQ(c.weak_constant, 2.5);
}

TEST(ParseSimulationConfigTest, DefaultsMatchReferenceDesign) {
  const SimulationConfig c = Unwrap(ParseSimulationConfig("", "empty"));
  EXPECT_EQ(c.n, 1000u);
  EXPECT_EQ(c.true_mu, 5.0);
  EXPECT_EQ(c.true_sigma, 2.0);
  EXPECT_EQ(c.lambda, -0.5);
  EXPECT_EQ(c.iterations, 50);
  EXPECT_EQ(c.learning_rate, 0.5);
  EXPECT_EQ(c.sensitivity_exponent, 1.7);
  EXPECT_EQ(c.contamination_lo, 9.34);
  EXPECT_EQ(c.contamination_hi, 10.15);
  EXPECT_EQ(c.threshold_lo, 0.007);
  EXPECT_EQ(c.threshold_hi, 0.995);
}

TEST(ParseSimulationConfigTest, NonPrivateEpsilon) {
  const SimulationConfig c =
      Unwrap(ParseSimulationConfig("epsilon_grid = inf, nonprivate, 1", "x"));
  EXPECT_TRUE(std::isinf(c.epsilon_grid[0]));
  EXPECT_TRUE(std::isinf(c.epsilon_grid[1]));
  EXPECT_TRUE(IsNonPrivateEpsilon(c.epsilon_grid[0], c.lambda));
  EXPECT_TRUE(IsNonPrivateEpsilon(2.0, kHdpLambda));
  EXPECT_FALSE(IsNonPrivateEpsilon(1.0, kHdpLambda));
  EXPECT_EQ(BudgetForEpsilon(1.0, kHdpLambda).epsilon, 2.0);
  EXPECT_EQ(BudgetForEpsilon(1.0, 0.5).epsilon, 1.0);
  // Bounded divergences map an infinite request onto the vacuous bound.
  for (double lambda : {-0.1, -0.3, -0.7, -0.9, -0.999}) {
    const double inf = std::numeric_limits<double>::infinity();
    const PrivacyBudget b = BudgetForEpsilon(inf, lambda);
    HDP_EXPECT_OK(ValidateBudget(b));
    EXPECT_TRUE(IsNonPrivateEpsilon(inf, lambda)) << lambda;
    EXPECT_FALSE(IsNonPrivateEpsilon(0.5 * b.epsilon, lambda)) << lambda;
  }
}

TEST(ParseSimulationConfigTest, ErrorsNameLineAndField) {
  struct Case {
    const char* text;
    const char* fragment;
  };
  const Case cases[] = {
      {"n = 100\nbogus = 3\n", "cfg:2: unknown key 'bogus'"},
      {"n = 100\n\nreps = many\n", "cfg:3: field 'reps'"},
      {"just text\n", "cfg:1: expected 'key = value'"},
      {"= 4\n", "cfg:1: missing key"},
      {"algo = sgd\n", "cfg:1: field 'algo'"},
      {"threshold = maybe\n", "cfg:1: field 'threshold'"},
      {"preset = table99\n", "cfg:1: field 'preset'"},
      {"preset = table1\npreset = table2\n", "cfg:2: field 'preset'"},
      {"epsilon_grid = 2.5\n", "field 'epsilon_grid'"},
      {"epsilon_grid = 0\n", "field 'epsilon_grid'"},
      {"p = 1\n", "field 'p'"},
      {"alpha_grid = 1\n", "field 'alpha_grid'"},
      {"contamination_lo = 11\n", "field 'contamination_lo'"},
      {"threshold_lo = 0.999\n", "field 'threshold_lo'"},
      {"level = 1\n", "field 'level'"},
      {"n = 1\n", "field 'n'"},
      {"reps = -1\n", "field 'reps'"},
      {"K = 0\n", "field 'K'"},
      {"bandwidth = -2\n", "field 'bandwidth'"},
  };
  for (const Case& c : cases) {
    const auto result = ParseSimulationConfig(c.text, "cfg");
    EXPECT_EQ(CodeOf(result), absl::StatusCode::kInvalidArgument) << c.text;
    EXPECT_THAT(std::string(result.status().message()), HasSubstr(c.fragment))
        << c.text;
  }
}

TEST(ParseSimulationConfigTest, PresetThenOverrides) {
  const SimulationConfig c = Unwrap(ParseSimulationConfig(
      "reps = 7\npreset = table2\nepsilon_grid = 0.6\n", "cfg"));
  EXPECT_EQ(c.name, "table2");
  EXPECT_EQ(c.algorithm, Algorithm::kNewtonRaphson);
  EXPECT_EQ(c.iterations, 5);
  EXPECT_EQ(c.reps, 7);
  EXPECT_THAT(c.epsilon_grid, ElementsAre(0.6));
}

TEST(FormatSimulationConfigTest, RoundTrips) {
  for (const std::string& name : PresetNames()) {
    const SimulationConfig c = Unwrap(Preset(name));
    const std::string text = FormatSimulationConfig(c);
    const SimulationConfig back = Unwrap(ParseSimulationConfig(text, name));
    EXPECT_EQ(FormatSimulationConfig(back), text) << name;
  }
  SimulationConfig c;
  c.iterations.reset();
  c.k_constant = 3.5;
  c.truncation = 9.0;
  c.weak_constant = 1.25;
  c.epsilon_grid = {std::numeric_limits<double>::infinity(), 0.1};
  c.bandwidth = BandwidthMode::kPerReplication;
  c.seed = 1ull << 60;
  c.true_mu = 0.1;
  const std::string text = FormatSimulationConfig(c);
  const SimulationConfig back = Unwrap(ParseSimulationConfig(text, "rt"));
  EXPECT_EQ(FormatSimulationConfig(back), text);
  EXPECT_EQ(back.true_mu, 0.1);
  EXPECT_EQ(back.seed, 1ull << 60);
  EXPECT_EQ(back.k_constant, 3.5);
  EXPECT_FALSE(back.iterations.has_value());
}

TEST(PresetTest, CatalogueCoversTables) {
  const std::vector<std::string> names = PresetNames();
  for (int i = 1; i <= 6; ++i) {
    EXPECT_THAT(names, ::testing::Contains("table" + std::to_string(i)));
  }
  for (int i = 7; i <= 22; ++i) {
    EXPECT_THAT(names, ::testing::Contains("tableA" + std::to_string(i)));
  }
  for (const std::string& name : names) {
    HDP_EXPECT_OK(ValidateSimulationConfig(Unwrap(Preset(name))));
  }
  EXPECT_EQ(CodeOf(Preset("table0")), absl::StatusCode::kInvalidArgument);
}

TEST(PresetTest, ReferenceCells) {
  const SimulationConfig t1 = Unwrap(Preset("table1"));
  EXPECT_EQ(t1.algorithm, Algorithm::kGradientDescent);
  EXPECT_EQ(t1.iterations, 50);
  EXPECT_EQ(t1.n, 1000u);
  EXPECT_THAT(t1.epsilon_grid, ElementsAre(2.0, 0.6, 0.2));
  const SimulationConfig t2 = Unwrap(Preset("table2"));
  EXPECT_EQ(t2.algorithm, Algorithm::kNewtonRaphson);
  EXPECT_EQ(t2.iterations, 5);
  const SimulationConfig t5 = Unwrap(Preset("table5"));
  EXPECT_THAT(t5.alpha_grid, ElementsAre(0.0, 0.05, 0.1, 0.2, 0.3));
  EXPECT_TRUE(t5.include_mle);
  const SimulationConfig t3 = Unwrap(Preset("table3"));
  EXPECT_EQ(t3.lambda, 1.0);
  EXPECT_TRUE(std::isinf(t3.epsilon_grid[0]));
}

TEST(LoadSimulationConfigTest, ReadsFileAndReportsMissing) {
  const std::string path = ::testing::TempDir() + "/hdp_config_test.cfg";
  {
    std::ofstream out(path);
    out << "preset = table5\nreps = 3\nalpha_grid = 0.3\n";
  }
  const SimulationConfig c = Unwrap(LoadSimulationConfig(path));
  EXPECT_EQ(c.reps, 3);
  EXPECT_THAT(c.alpha_grid, ElementsAre(0.3));
  std::remove(path.c_str());
  EXPECT_EQ(CodeOf(LoadSimulationConfig(path)), absl::StatusCode::kNotFound);
}

TEST(ApplyConfigValueTest, SetsSingleField) {
  SimulationConfig c;
  HDP_EXPECT_OK(ApplyConfigValue(c, "reps", " 40 "));
  EXPECT_EQ(c.reps, 40);
  HDP_EXPECT_OK(ApplyConfigValue(c, "K", "12"));
  EXPECT_EQ(c.iterations, 12);
  EXPECT_EQ(CodeOf(ApplyConfigValue(c, "nope", "1")),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace hdp
