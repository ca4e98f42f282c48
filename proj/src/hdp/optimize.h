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

// Gradient descent and Newton-Raphson on the Monte Carlo Hellinger loss,
// with and without per-iteration Gaussian noise.
//
// Private gradient descent:
//   theta_{k+1} = theta_k - eta (grad L(theta_k) + s_k Z_k)
// Private Newton-Raphson:
//   theta_{k+1} = theta_k - eta R(H(theta_k) + W_k)^{-1} (grad L + s_k Z_k)
// where s_k is the gradient sensitivity at theta_k times the per-unit noise
// multiplier, W_k is a symmetric Gaussian matrix scaled by the Hessian
// sensitivity, and R clips eigenvalues below the Hessian floor.

#ifndef HDP_OPTIMIZE_H_
#define HDP_OPTIMIZE_H_

#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "hdp/hd_loss.h"
#include "hdp/privacy.h"
#include "hdp/random.h"

namespace hdp {

enum class Algorithm { kGradientDescent, kNewtonRaphson };
enum class SensitivityRegime { kSharp, kWeak };
enum class StartMode { kFixed, kRobust, kMoments, kAuto };

absl::StatusOr<Algorithm> ParseAlgorithm(absl::string_view name);
std::string AlgorithmName(Algorithm algo);
absl::StatusOr<StartMode> ParseStartMode(absl::string_view name);
std::string StartModeName(StartMode mode);

inline constexpr double kDefaultHessianFloor = 1e-3;

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::kGradientDescent;
  int iterations = 50;
  double learning_rate = 0.5;
  // Total budget of the released final iterate.
  PrivacyBudget budget = PrivacyBudget::FromHdp(kHdpCeiling);
  double sensitivity_exponent = 1.7;
  SensitivityRegime regime = SensitivityRegime::kSharp;
  // Weak regime constant C in C n^{-1/2}. When unset the model constants
  // are used with rate n^{-1/2}.
  std::optional<double> weak_constant;
  double hessian_floor = kDefaultHessianFloor;
};

absl::Status ValidateOptimizerConfig(const OptimizerConfig& config);

// Per-iteration noise plan derived from a config.
struct NoisePlan {
  // Per-iteration budget in the units of the total budget (HDP units for
  // HDP budgets, power-divergence units otherwise).
  double eps_per_step = 0.0;
  // Budget of each of the gradient and Hessian releases in Newton-Raphson.
  // Equals eps_per_step for gradient descent.
  double eps_per_release = 0.0;
  // Noise standard deviation per unit L2 sensitivity.
  double multiplier = 0.0;
};

absl::StatusOr<NoisePlan> PlanNoise(const OptimizerConfig& config);

// Per-unit-sensitivity Gaussian standard deviation for a single release.
// eps is in the units of budget_lambda's family (HDP when lambda = -1/2).
absl::StatusOr<double> NoiseMultiplier(double eps, double lambda);

struct IterateTrace {
  // theta_0 .. theta_K.
  std::vector<Eigen::VectorXd> thetas;
  // Raw Monte Carlo loss at each theta.
  std::vector<double> losses;
  // Gradient noise vectors and Hessian noise matrices, one per iteration.
  std::vector<Eigen::VectorXd> gradient_noise;
  std::vector<Eigen::MatrixXd> hessian_noise;
  // Composed budget after k iterations, k = 0..K.
  std::vector<double> eps_spent;
  NoisePlan plan;
  // Sensitivities and regularized perturbed Hessian of the final iteration.
  double last_gradient_sensitivity = 0.0;
  double last_hessian_sensitivity = 0.0;
  Eigen::MatrixXd last_perturbed_hessian;
  // Loss, gradient, Hessian and meat at theta_K.
  LossEvaluation final_evaluation;
  int projections = 0;
  int regularizations = 0;
  int capped_ratios = 0;

  const Eigen::VectorXd& estimate() const { return thetas.back(); }
};

// Symmetric m x m matrix whose upper triangle, diagonal included, holds
// independent N(0, scale^2) entries.
absl::StatusOr<Eigen::MatrixXd> SymmetricNoiseMatrix(int m, double scale,
                                                     RandomStream& rng);

// Symmetrizes h and raises eigenvalues below floor to floor. Returns h
// unchanged when it is already symmetric with all eigenvalues >= floor.
absl::StatusOr<Eigen::MatrixXd> RegularizeHessian(const Eigen::MatrixXd& h,
                                                  double floor,
                                                  bool* changed = nullptr);

// Gradient and Hessian sensitivities at theta.
absl::StatusOr<Sensitivities> LossSensitivities(const McLossContext& ctx,
                                                const OptimizerConfig& config,
                                                const Eigen::VectorXd& theta);

// Non-private optimizers.
absl::StatusOr<IterateTrace> RunGradientDescent(const McLossContext& ctx,
                                                const Eigen::VectorXd& theta0,
                                                int iterations,
                                                double learning_rate);
absl::StatusOr<IterateTrace> RunNewtonRaphson(
    const McLossContext& ctx, const Eigen::VectorXd& theta0, int iterations,
    double learning_rate, double hessian_floor = kDefaultHessianFloor);

// Private optimizers. rng is the replication's optimizer stream; iteration k
// draws from rng.Derive(k).
absl::StatusOr<IterateTrace> RunPrivateGradientDescent(
    const McLossContext& ctx, const OptimizerConfig& config,
    const Eigen::VectorXd& theta0, const RandomStream& rng);
absl::StatusOr<IterateTrace> RunPrivateNewtonRaphson(
    const McLossContext& ctx, const OptimizerConfig& config,
    const Eigen::VectorXd& theta0, const RandomStream& rng);
// Dispatches on config.algorithm.
absl::StatusOr<IterateTrace> RunPrivateOptimizer(
    const McLossContext& ctx, const OptimizerConfig& config,
    const Eigen::VectorXd& theta0, const RandomStream& rng);

// ceil(c log n) for gradient descent, ceil(c log log n) for Newton-Raphson.
// Without c the constants reproduce K = 50 and K = 5 at n = 1000.
absl::StatusOr<int> AutoIterations(Algorithm algo, std::size_t n,
                                   std::optional<double> constant = {});

// Normal-model starting point. kFixed returns fixed; kRobust uses the median
// and IQR / 1.349; kMoments uses the mean and standard deviation; kAuto is
// kFixed for gradient descent and kRobust for Newton-Raphson. The data-based
// starts are not privatized.
absl::StatusOr<Eigen::VectorXd> StartingPoint(StartMode mode, Algorithm algo,
                                              absl::Span<const double> data,
                                              const Eigen::VectorXd& fixed);

}  // namespace hdp

#endif  // HDP_OPTIMIZE_H_
