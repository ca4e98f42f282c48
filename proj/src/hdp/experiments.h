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

// Single-dataset estimation and the seeded replication engine.
//
// Every replication owns the streams (seed, n, alpha index, rep, purpose).
// Data and Monte Carlo samples do not depend on epsilon, so all budgets of
// one replication see the same dataset, kernel sample and optimizer noise
// draws. Results never depend on the thread count.

#ifndef HDP_EXPERIMENTS_H_
#define HDP_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "hdp/config.h"
#include "hdp/inference.h"
#include "hdp/optimize.h"
#include "hdp/random.h"

namespace hdp {

// Settings for estimating from one dataset.
struct EstimateOptions {
  Algorithm algorithm = Algorithm::kGradientDescent;
  // Unset: automatic K from n.
  std::optional<int> iterations;
  std::optional<double> k_constant;
  double learning_rate = 0.5;
  // HDP units when lambda = -1/2, power-divergence units otherwise.
  double epsilon = 2.0;
  double lambda = kHdpLambda;
  double sensitivity_exponent = 1.7;
  SensitivityRegime regime = SensitivityRegime::kSharp;
  std::optional<double> weak_constant;
  double hessian_floor = kDefaultHessianFloor;
  double sigma_min = 0.05;
  std::uint64_t seed = 20260101;
  int mc_multiplier = 5;
  // Unset: Silverman bandwidth of the data.
  std::optional<double> bandwidth;
  std::optional<double> truncation;
  double level = 0.95;
  CorrectionMode correction = CorrectionMode::kCalibrated;
  CovarianceMode cov_mode = CovarianceMode::kPrivate;
  StartMode start = StartMode::kAuto;
  double start_mu = 1.0;
  double start_sigma = 1.0;
};

absl::Status ValidateEstimateOptions(const EstimateOptions& options);

// Optimizer settings implied by options for a dataset of size n.
absl::StatusOr<OptimizerConfig> MakeOptimizerConfig(
    const EstimateOptions& options, std::size_t n);

struct EstimateReport {
  IterateTrace trace;
  CiReport ci;
  OptimizerConfig optimizer;
  double bandwidth = 0.0;
  std::size_t mc_samples = 0;
  // Budget of the released estimate.
  double epsilon_estimate = 0.0;
  // Budget of estimate plus private covariance: loose min(3 eps, 2) and
  // exact composition. Equal to epsilon_estimate for the non-private
  // sandwich.
  double epsilon_with_cov_loose = 0.0;
  double epsilon_with_cov = 0.0;
};

// Fits the model to data under options. Streams are derived from
// options.seed.
absl::StatusOr<EstimateReport> EstimateFromData(absl::Span<const double> data,
                                                const EstimateOptions& options);

// Intervals for a given estimate theta: the covariance at theta plus the
// correction the configured optimizer would add, with the regularized
// Hessian at theta standing in for the perturbed one.
absl::StatusOr<CiReport> CiForEstimate(absl::Span<const double> data,
                                       const Eigen::VectorXd& theta,
                                       const EstimateOptions& options);

// n draws from (1 - alpha) N(mu, sigma^2) + alpha U(lo, hi).
absl::StatusOr<std::vector<double>> GenerateContaminated(
    std::size_t n, double mu, double sigma, double alpha, double lo, double hi,
    RandomStream& rng);

// Sample mean and maximum-likelihood standard deviation.
absl::StatusOr<Eigen::VectorXd> MleEstimate(absl::Span<const double> data);

// Keeps estimates whose first coordinate lies within the [lo, hi] quantiles
// of N(reference[0], reference[1]^2). Returns one flag per estimate.
absl::StatusOr<std::vector<bool>> ThresholdEstimates(
    absl::Span<const Eigen::VectorXd> estimates,
    absl::Span<const Eigen::VectorXd> references, double lo = 0.007,
    double hi = 0.995);

struct ReplicationOutcome {
  std::size_t n = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  int rep = 0;
  bool failed = false;
  std::string failure;
  // Dropped by thresholding.
  bool dropped = false;
  Eigen::VectorXd estimate;
  // Non-private estimate of the same algorithm; empty when unavailable.
  Eigen::VectorXd reference;
  std::vector<Interval> plain;
  std::vector<Interval> corrected;
  std::vector<bool> covered;
  std::vector<bool> covered_corrected;
  double epsilon_spent = 0.0;
  int projections = 0;
  int capped_ratios = 0;
  std::optional<IterateTrace> trace;
};

struct MleOutcome {
  std::size_t n = 0;
  double alpha = 0.0;
  int rep = 0;
  bool failed = false;
  Eigen::VectorXd estimate;
  std::vector<bool> covered;
};

struct CellSummary {
  std::size_t n = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  int reps = 0;
  int n_failed = 0;
  // Replications removed by thresholding.
  int n_thresholded = 0;
  // Mean and standard error over replications kept after thresholding.
  Eigen::VectorXd mean;
  Eigen::VectorXd se;
  // Same over every non-failed replication.
  Eigen::VectorXd mean_all;
  Eigen::VectorXd se_all;
  // Coverage over every non-failed replication.
  Eigen::VectorXd coverage_corrected;
  Eigen::VectorXd coverage_uncorrected;
  // Coverage over replications kept after thresholding.
  Eigen::VectorXd coverage_corrected_kept;
  Eigen::VectorXd coverage_uncorrected_kept;
};

struct MleSummary {
  std::size_t n = 0;
  double alpha = 0.0;
  int reps = 0;
  int n_failed = 0;
  Eigen::VectorXd mean;
  Eigen::VectorXd se;
  Eigen::VectorXd coverage;
};

struct SimulationResult {
  SimulationConfig config;
  // Sample sizes actually run: n_grid plus n, ascending.
  std::vector<std::size_t> sizes;
  // Cells ordered by n, alpha, epsilon.
  std::vector<CellSummary> cells;
  std::vector<MleSummary> mle;
  // Ordered by n, alpha, rep, epsilon.
  std::vector<ReplicationOutcome> replications;
  std::vector<MleOutcome> mle_replications;
  // Shared bandwidth per (n, alpha) in auto mode, ordered by n, alpha.
  std::vector<double> bandwidths;
};

absl::StatusOr<SimulationResult> RunSimulation(const SimulationConfig& config);

// Sample sizes a config runs.
std::vector<std::size_t> SimulationSizes(const SimulationConfig& config);

}  // namespace hdp

#endif  // HDP_EXPERIMENTS_H_
