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

// Sandwich covariance of sqrt(n) (theta_hat - theta), its private release,
// and plain and noise-corrected Wald intervals.
//
// V = H^{-1} M H^{-1} with H the loss Hessian and M the Monte Carlo second
// moment of the per-sample gradient terms, both at theta_hat.

#ifndef HDP_INFERENCE_H_
#define HDP_INFERENCE_H_

#include <string>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "hdp/hd_loss.h"
#include "hdp/optimize.h"
#include "hdp/random.h"

namespace hdp {

// Form of the optimizer-noise variance added to V_jj / n.
//   kVerbatim:   GD 2 eta D c;      NR eta^2 (P P)_jj D c
//   kSquared:    GD 2 (eta D c)^2;  NR eta^2 (P P)_jj (D c)^2
//   kCalibrated: GD squared, NR verbatim
// D is the gradient sensitivity, c the per-release noise multiplier and P
// the inverse of the final regularized perturbed Hessian.
enum class CorrectionMode { kVerbatim, kSquared, kCalibrated };
// Covariance used by the intervals: the non-private sandwich or the
// noise-perturbed release.
enum class CovarianceMode { kSandwich, kPrivate };

absl::StatusOr<CorrectionMode> ParseCorrectionMode(absl::string_view name);
std::string CorrectionModeName(CorrectionMode mode);
absl::StatusOr<CovarianceMode> ParseCovarianceMode(absl::string_view name);
std::string CovarianceModeName(CovarianceMode mode);

// Symmetrizes m and raises negative eigenvalues to zero. Returns the
// symmetrized m unchanged when it is already PSD.
absl::StatusOr<Eigen::MatrixXd> ClipToPsd(const Eigen::MatrixXd& m);

// R(H)^{-1} M+ R(H)^{-1}, symmetrized and clipped to PSD, where R raises
// eigenvalues to hessian_floor and M+ is the PSD part of meat.
absl::StatusOr<Eigen::MatrixXd> AssembleSandwich(const Eigen::MatrixXd& hessian,
                                                 const Eigen::MatrixXd& meat,
                                                 double hessian_floor);

absl::StatusOr<Eigen::MatrixXd> SandwichCov(
    const McLossContext& ctx, const Eigen::VectorXd& theta,
    double hessian_floor = kDefaultHessianFloor);

struct PrivateCovRelease {
  Eigen::MatrixXd cov;
  Eigen::MatrixXd hessian_noise;
  Eigen::MatrixXd meat_noise;
  // Budget of each of the two matrix releases.
  double epsilon = 0.0;
  // Loose total for estimate plus both releases: min(3 eps, ceiling).
  double epsilon_total_loose = 0.0;
  // Exact three-fold composition of eps.
  double epsilon_total = 0.0;
};

// Releases V with H and M each perturbed by a symmetric Gaussian matrix of
// scale hessian_sensitivity * multiplier(eps). eps is in the units of lambda
// (HDP units when lambda = -1/2). eps at the vacuous end reproduces the
// non-private sandwich exactly.
absl::StatusOr<PrivateCovRelease> PrivateCovFromEvaluation(
    const LossEvaluation& eval, double hessian_sensitivity, double eps,
    double lambda, RandomStream& rng,
    double hessian_floor = kDefaultHessianFloor);
absl::StatusOr<PrivateCovRelease> PrivateCov(const McLossContext& ctx,
                                             const OptimizerConfig& config,
                                             const Eigen::VectorXd& theta,
                                             double eps, RandomStream& rng);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool Contains(double x) const { return lo <= x && x <= hi; }
};

struct CiInputs {
  Eigen::VectorXd estimate;
  // Covariance of sqrt(n) (theta_hat - theta).
  Eigen::MatrixXd cov;
  std::size_t n = 0;
  double level = 0.95;
  Algorithm algorithm = Algorithm::kGradientDescent;
  CorrectionMode correction = CorrectionMode::kCalibrated;
  double learning_rate = 0.5;
  // Gradient sensitivity of the final iteration.
  double gradient_sensitivity = 0.0;
  // Per-release noise multiplier.
  double multiplier = 0.0;
  // Final regularized perturbed Hessian; Newton-Raphson only.
  Eigen::MatrixXd perturbed_hessian;
  double epsilon_total = 0.0;
};

// Fills CiInputs from a finished trace.
CiInputs CiInputsFromTrace(const IterateTrace& trace,
                           const OptimizerConfig& config,
                           const Eigen::MatrixXd& cov, std::size_t n,
                           double level, CorrectionMode correction);

struct CiReport {
  Eigen::VectorXd estimate;
  Eigen::MatrixXd cov;
  std::vector<Interval> plain;
  std::vector<Interval> corrected;
  // Variance added under the square root, per coordinate.
  Eigen::VectorXd correction;
  double level = 0.95;
  double critical_value = 0.0;
  double epsilon_total = 0.0;
};

// Per-coordinate correction variances.
absl::StatusOr<Eigen::VectorXd> CorrectionTerms(const CiInputs& in);

absl::StatusOr<CiReport> CorrectedCi(const CiInputs& in);

}  // namespace hdp

#endif  // HDP_INFERENCE_H_
