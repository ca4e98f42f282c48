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

#include "hdp/experiments.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hdp/config.h"
#include "hdp/csv_output.h"
#include "hdp/special_functions.h"
#include "test_util.h"

namespace hdp {
namespace {

using ::hdp::testing::CodeOf;
using ::hdp::testing::Unwrap;
using ::testing::HasSubstr;
using ::testing::StartsWith;

Eigen::VectorXd Theta(double mu, double sigma) {
  Eigen::VectorXd t(2);
  t << mu, sigma;
  return t;
}

// Small grid that still exercises every code path of a replication.
SimulationConfig SmallConfig() {
  SimulationConfig c;
  c.n = 200;
  c.reps = 6;
  c.iterations = 10;
  c.epsilon_grid = {2.0, 0.6};
  c.alpha_grid = {0.0, 0.1};
  c.include_mle = true;
  c.seed = 99;
  c.threads = 1;
  return c;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(GenerateContaminatedTest, PureNormalPassesKolmogorovSmirnov) {
  RandomStream rng({1});
  const std::size_t n = 2000;
  std::vector<double> x =
      Unwrap(GenerateContaminated(n, 5.0, 2.0, 0.0, 9.34, 10.15, rng));
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = NormalCdf((x[i] - 5.0) / 2.0);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(f - static_cast<double>(i + 1) / n)});
  }
  // One-sample KS critical value at the 1% level.
  EXPECT_LT(d, 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST(GenerateContaminatedTest, FullContaminationStaysInInterval) {
  RandomStream rng({2});
  for (double x : Unwrap(GenerateContaminated(5000, 5.0, 2.0, 1.0, 9.34,
                                              10.15, rng))) {
    EXPECT_GE(x, 9.34);
    EXPECT_LT(x, 10.15);
  }
}

TEST(GenerateContaminatedTest, ContaminatedFraction) {
  RandomStream rng({3});
  const std::size_t n = 100000;
  const std::vector<double> x =
      Unwrap(GenerateContaminated(n, 5.0, 2.0, 0.3, 9.34, 10.15, rng));
  const double inside =
      std::count_if(x.begin(), x.end(),
                    [](double v) { return v >= 9.34 && v <= 10.15; }) /
      static_cast<double>(n);
  const double tail = NormalCdf((10.15 - 5.0) / 2.0) - NormalCdf((9.34 - 5.0) / 2.0);
  EXPECT_NEAR(inside, 0.3 + 0.7 * tail, 0.01);
}

TEST(GenerateContaminatedTest, RejectsInvalidArguments) {
  RandomStream rng({4});
  EXPECT_EQ(CodeOf(GenerateContaminated(10, 5.0, 0.0, 0.0, 9.34, 10.15, rng)),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(GenerateContaminated(10, 5.0, 2.0, 1.5, 9.34, 10.15, rng)),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(GenerateContaminated(10, 5.0, 2.0, 0.1, 10.15, 9.34, rng)),
            absl::StatusCode::kInvalidArgument);
}

TEST(MleEstimateTest, HandValues) {
  const Eigen::VectorXd t = Unwrap(MleEstimate(std::vector<double>{0, 0, 2, 2}));
  EXPECT_EQ(t[0], 1.0);
  EXPECT_EQ(t[1], 1.0);
  EXPECT_EQ(CodeOf(MleEstimate(std::vector<double>{3.0})),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(MleEstimate(std::vector<double>{3.0, 3.0})),
            absl::StatusCode::kAborted);
}

TEST(ThresholdEstimatesTest, KeepsCentralDropsFar) {
  const Eigen::VectorXd ref = Theta(5.0, 0.1);
  const std::vector<Eigen::VectorXd> est = {Theta(5.0, 2.0), Theta(6.0, 2.0),
                                            Theta(5.0 + 2.5 * 0.1, 2.0),
                                            Theta(5.0 - 2.5 * 0.1, 2.0),
                                            Theta(100.0, 2.0)};
  const std::vector<Eigen::VectorXd> refs = {ref, ref, ref, ref,
                                             Eigen::VectorXd()};
  const std::vector<bool> keep = Unwrap(ThresholdEstimates(est, refs));
  // q_0.995 = 2.576 keeps +2.5 sd; q_0.007 = -2.457 drops -2.5 sd.
  EXPECT_THAT(keep, ::testing::ElementsAre(true, false, true, false, true));
  EXPECT_EQ(CodeOf(ThresholdEstimates(est, {ref})),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(ThresholdEstimates(est, refs, 0.5, 0.4)),
            absl::StatusCode::kInvalidArgument);
}

TEST(RunSimulationTest, ZeroRepsGivesEmptySummary) {
  SimulationConfig c = SmallConfig();
  c.reps = 0;
  const SimulationResult r = Unwrap(RunSimulation(c));
  EXPECT_TRUE(r.cells.empty());
  EXPECT_TRUE(r.replications.empty());
  const std::vector<std::string> lines = Lines(TableCsv(r, c.n));
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_THAT(lines[0], StartsWith("epsilon,alpha,coord,mean,se,cov_corr,"
                                   "cov_uncorr,n_thresholded,n_failed"));
}

TEST(RunSimulationTest, RejectsInvalidConfig) {
  SimulationConfig c = SmallConfig();
  c.epsilon_grid = {3.0};
  EXPECT_EQ(CodeOf(RunSimulation(c)), absl::StatusCode::kInvalidArgument);
}

TEST(RunSimulationTest, CellLayoutAndInvariants) {
  const SimulationConfig c = SmallConfig();
  const SimulationResult r = Unwrap(RunSimulation(c));
  ASSERT_EQ(r.cells.size(), 4u);
  ASSERT_EQ(r.mle.size(), 2u);
  EXPECT_EQ(r.replications.size(), 4u * 6u);
  EXPECT_EQ(r.bandwidths.size(), 2u);
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const CellSummary& s = r.cells[i];
    EXPECT_EQ(s.alpha, c.alpha_grid[i / 2]);
    EXPECT_EQ(s.epsilon, c.epsilon_grid[i % 2]);
    EXPECT_EQ(s.reps, 6);
    EXPECT_GE(s.n_thresholded, 0);
    EXPECT_LE(s.n_thresholded + s.n_failed, 6);
    for (int j = 0; j < 2; ++j) {
      EXPECT_GE(s.se_all[j], 0.0);
      for (double cov : {s.coverage_corrected[j], s.coverage_uncorrected[j]}) {
        EXPECT_GE(cov, 0.0);
        EXPECT_LE(cov, 1.0);
      }
      EXPECT_GE(s.coverage_corrected[j], s.coverage_uncorrected[j]);
    }
  }
  for (const ReplicationOutcome& o : r.replications) {
    if (o.failed) continue;
    EXPECT_NEAR(o.epsilon_spent, o.epsilon, 1e-10);
    for (int j = 0; j < 2; ++j) {
      EXPECT_LE(o.corrected[j].lo, o.plain[j].lo);
      EXPECT_GE(o.corrected[j].hi, o.plain[j].hi);
    }
  }
  // At the ceiling budget the private estimate equals its reference.
  for (const ReplicationOutcome& o : r.replications) {
    if (o.failed || o.epsilon != 2.0) continue;
    EXPECT_EQ(o.estimate, o.reference);
  }
}

TEST(RunSimulationTest, DeterministicAcrossRunsAndThreads) {
  SimulationConfig c = SmallConfig();
  const SimulationResult a = Unwrap(RunSimulation(c));
  const SimulationResult b = Unwrap(RunSimulation(c));
  c.threads = 4;
  const SimulationResult d = Unwrap(RunSimulation(c));
  EXPECT_EQ(TableCsv(a, c.n), TableCsv(b, c.n));
  EXPECT_EQ(ReplicationsCsv(a), ReplicationsCsv(b));
  EXPECT_EQ(ReplicationsCsv(a), ReplicationsCsv(d));
  EXPECT_EQ(MleCsv(a, c.n), MleCsv(d, c.n));
  c.seed = 100;
  EXPECT_NE(ReplicationsCsv(Unwrap(RunSimulation(c))), ReplicationsCsv(a));
}

TEST(RunSimulationTest, ThresholdingCountsDroppedReplications) {
  SimulationConfig c = SmallConfig();
  c.epsilon_grid = {0.05};
  c.alpha_grid = {0.0};
  c.reps = 20;
  const SimulationResult with = Unwrap(RunSimulation(c));
  c.threshold = false;
  const SimulationResult without = Unwrap(RunSimulation(c));
  EXPECT_GT(with.cells[0].n_thresholded, 0);
  EXPECT_EQ(without.cells[0].n_thresholded, 0);
  int dropped = 0;
  for (const ReplicationOutcome& o : with.replications) dropped += o.dropped;
  EXPECT_EQ(dropped, with.cells[0].n_thresholded);
  // Unthresholded statistics agree between the two runs.
  EXPECT_EQ(with.cells[0].mean_all, without.cells[0].mean_all);
  EXPECT_EQ(without.cells[0].mean, without.cells[0].mean_all);
}

TEST(RunSimulationTest, MleStandardErrorMatchesTheory) {
  SimulationConfig c;
  c.n = 1000;
  c.reps = 200;
  c.iterations = 1;
  c.epsilon_grid = {2.0};
  c.include_mle = true;
  c.threshold = false;
  const SimulationResult r = Unwrap(RunSimulation(c));
  ASSERT_EQ(r.mle.size(), 1u);
  EXPECT_NEAR(r.mle[0].mean[0], 5.0, 0.02);
  EXPECT_NEAR(r.mle[0].se[0], 2.0 / std::sqrt(1000.0), 0.01);
  EXPECT_NEAR(r.mle[0].coverage[0], 0.95, 0.05);
}

// Heavier contamination pulls the MLE towards the outliers while the
// minimum-distance estimate stays near the centre.
TEST(RunSimulationTest, RobustnessGap) {
  SimulationConfig c;
  c.n = 500;
  c.reps = 20;
  c.epsilon_grid = {2.0};
  c.alpha_grid = {0.1, 0.3};
  c.include_mle = true;
  const SimulationResult r = Unwrap(RunSimulation(c));
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_LT(std::abs(r.cells[a].mean[0] - 5.0),
              std::abs(r.mle[a].mean[0] - 5.0))
        << c.alpha_grid[a];
  }
}

TEST(RunSimulationTest, StandardErrorGrowsAsBudgetShrinks) {
  SimulationConfig c;
  c.n = 500;
  c.reps = 40;
  c.iterations = 20;
  c.epsilon_grid = {2.0, 0.6, 0.2};
  const SimulationResult r = Unwrap(RunSimulation(c));
  EXPECT_LE(r.cells[0].se_all[0], r.cells[1].se_all[0]);
  EXPECT_LE(r.cells[1].se_all[0], r.cells[2].se_all[0]);
}

TEST(RunSimulationTest, SizeSweepAndTraces) {
  SimulationConfig c = SmallConfig();
  c.alpha_grid = {0.0};
  c.n_grid = {100, 50};
  c.trace_reps = 2;
  c.reps = 3;
  const SimulationResult r = Unwrap(RunSimulation(c));
  EXPECT_THAT(r.sizes, ::testing::ElementsAre(50u, 100u, 200u));
  EXPECT_EQ(r.cells.size(), 6u);
  int traced = 0;
  for (const ReplicationOutcome& o : r.replications) {
    if (o.trace.has_value()) {
      ++traced;
      EXPECT_LT(o.rep, 2);
      EXPECT_EQ(o.trace->thetas.size(), 11u);
    }
  }
  EXPECT_EQ(traced, 3 * 2 * 2);
  const std::vector<std::string> lines = Lines(CoverageVsNCsv(r));
  EXPECT_GT(lines.size(), 1u);
}

TEST(RunSimulationTest, PowerDivergenceGridWithNonPrivateColumn) {
  SimulationConfig c = Unwrap(Preset("tableA7"));
  c.n = 200;
  c.reps = 2;
  c.iterations = 5;
  const SimulationResult r = Unwrap(RunSimulation(c));
  ASSERT_EQ(r.cells.size(), 3u);
  for (const CellSummary& s : r.cells) EXPECT_EQ(s.n_failed, 0);
  // The infinite column runs without noise and matches the reference.
  for (const ReplicationOutcome& o : r.replications) {
    if (std::isinf(o.epsilon)) EXPECT_EQ(o.estimate, o.reference);
  }
}

TEST(RunSimulationTest, EveryPresetRuns) {
  for (const std::string& name : PresetNames()) {
    SimulationConfig c = Unwrap(Preset(name));
    c.reps = 1;
    c.trace_reps = std::min(c.trace_reps, 1);
    c.iterations = 3;
    const SimulationResult r = Unwrap(RunSimulation(c));
    EXPECT_EQ(r.cells.size(), r.sizes.size() * c.alpha_grid.size() *
                                  c.epsilon_grid.size())
        << name;
  }
}

TEST(WriteSimulationOutputsTest, WritesTables) {
  SimulationConfig c = SmallConfig();
  c.reps = 2;
  const SimulationResult r = Unwrap(RunSimulation(c));
  const std::string dir = ::testing::TempDir() + "/hdp_experiments_out";
  std::filesystem::remove_all(dir);
  const WrittenFiles files = Unwrap(WriteSimulationOutputs(r, dir, true));
  EXPECT_FALSE(files.paths.empty());
  for (const std::string& p : files.paths) {
    EXPECT_TRUE(std::filesystem::exists(p)) << p;
  }
  std::ifstream table(files.paths.front());
  std::string header;
  std::getline(table, header);
  EXPECT_THAT(header, HasSubstr("epsilon"));
  std::filesystem::remove_all(dir);
}

TEST(EstimateFromDataTest, CeilingBudgetMatchesNonPrivate) {
  RandomStream rng({7});
  const std::vector<double> data =
      Unwrap(GenerateContaminated(1000, 5.0, 2.0, 0.0, 9.34, 10.15, rng));
  EstimateOptions o;
  o.iterations = 50;
  o.epsilon = 2.0;
  const EstimateReport rep = Unwrap(EstimateFromData(data, o));
  EXPECT_NEAR(rep.trace.estimate()[0], 5.0, 0.3);
  EXPECT_NEAR(rep.epsilon_estimate, 2.0, 1e-12);
  for (int j = 0; j < 2; ++j) {
    EXPECT_EQ(rep.ci.corrected[j].lo, rep.ci.plain[j].lo);
  }
  o.epsilon = 0.6;
  o.algorithm = Algorithm::kNewtonRaphson;
  o.iterations = 5;
  const EstimateReport nr = Unwrap(EstimateFromData(data, o));
  EXPECT_NEAR(nr.epsilon_estimate, 0.6, 1e-10);
  EXPECT_NEAR(nr.epsilon_with_cov_loose, 1.8, 1e-12);
  EXPECT_NEAR(nr.epsilon_with_cov, Unwrap(ComposeHdpK(0.6, 3)), 1e-12);
  EXPECT_EQ(nr.mc_samples, 5000u);
  // Same options, same output.
  const EstimateReport again = Unwrap(EstimateFromData(data, o));
  EXPECT_EQ(again.trace.estimate(), nr.trace.estimate());
  EXPECT_EQ(again.ci.corrected[0].lo, nr.ci.corrected[0].lo);
}

TEST(EstimateFromDataTest, AutoIterationsAndErrors) {
  RandomStream rng({8});
  const std::vector<double> data =
      Unwrap(GenerateContaminated(300, 5.0, 2.0, 0.0, 9.34, 10.15, rng));
  EstimateOptions o;
  o.epsilon = 1.0;
  const EstimateReport rep = Unwrap(EstimateFromData(data, o));
  EXPECT_EQ(static_cast<int>(rep.trace.thetas.size()) - 1,
            Unwrap(AutoIterations(Algorithm::kGradientDescent, 300)));
  o.epsilon = 0.0;
  EXPECT_EQ(CodeOf(EstimateFromData(data, o)),
            absl::StatusCode::kInvalidArgument);
  o.epsilon = 1.0;
  EXPECT_EQ(CodeOf(EstimateFromData(std::vector<double>{1.0}, o)),
            absl::StatusCode::kInvalidArgument);
}

TEST(CiForEstimateTest, IntervalsAroundGivenPoint) {
  RandomStream rng({9});
  const std::vector<double> data =
      Unwrap(GenerateContaminated(500, 5.0, 2.0, 0.0, 9.34, 10.15, rng));
  EstimateOptions o;
  o.epsilon = 0.6;
  o.iterations = 20;
  const CiReport ci = Unwrap(CiForEstimate(data, Theta(5.0, 2.0), o));
  EXPECT_EQ(ci.estimate, Theta(5.0, 2.0));
  for (int j = 0; j < 2; ++j) {
    EXPECT_LT(ci.corrected[j].lo, ci.plain[j].lo);
    EXPECT_TRUE(ci.plain[j].Contains(ci.estimate[j]));
  }
}

}  // namespace
}  // namespace hdp
