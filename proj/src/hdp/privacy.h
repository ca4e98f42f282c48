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

// Calibration, composition and conversion of power-divergence privacy
// budgets.
//
// A (lambda, epsilon)-PDP budget bounds the power divergence of order lambda
// between output distributions on adjacent datasets. epsilon-HDP bounds the
// squared Hellinger distance and is stored as (-1/2, 2 epsilon); the HDP entry
// points convert exactly once at the boundary.

#ifndef HDP_PRIVACY_H_
#define HDP_PRIVACY_H_

#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace hdp {

inline constexpr double kHdpLambda = -0.5;
// Squared Hellinger distance never exceeds this value.
inline constexpr double kHdpCeiling = 2.0;

struct PrivacyBudget {
  double lambda = kHdpLambda;
  // Power-divergence units.
  double epsilon = 0.0;

  static PrivacyBudget FromHdp(double epsilon_hdp) {
    return {kHdpLambda, 2.0 * epsilon_hdp};
  }
  bool is_hdp() const { return lambda == kHdpLambda; }
  // Only meaningful when is_hdp().
  double hdp_epsilon() const { return 0.5 * epsilon; }
};

// Checks epsilon > 0 and, when lambda (lambda + 1) < 0, epsilon at most
// -1 / (lambda (lambda + 1)). The upper end is the vacuous budget.
absl::Status ValidateBudget(const PrivacyBudget& budget);

// True when the budget places no constraint (epsilon-HDP with epsilon = 2, or
// an infinite epsilon).
bool IsVacuous(const PrivacyBudget& budget);

enum class NoiseKind { kGaussian, kLaplace };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;
  // Standard deviation sigma for Gaussian noise, scale b for Laplace noise.
  double scale = 0.0;
  // L2 sensitivity for Gaussian noise, L1 sensitivity for Laplace noise.
  double sensitivity = 0.0;
  int dim = 1;

  double variance() const {
    return kind == NoiseKind::kGaussian ? scale * scale : 2.0 * scale * scale;
  }
};

absl::StatusOr<NoiseSpec> CalibrateGaussianPdp(double delta_l2,
                                               const PrivacyBudget& budget,
                                               int dim = 1);
absl::StatusOr<NoiseSpec> CalibrateGaussianHdp(double delta_l2,
                                               double epsilon_hdp, int dim = 1);
absl::StatusOr<NoiseSpec> CalibrateLaplacePdp(double delta_l1,
                                              const PrivacyBudget& budget,
                                              int dim = 1);
// Smallest one-dimensional Laplace scale whose exact squared Hellinger
// distance equals epsilon_hdp in (0, 2).
absl::StatusOr<NoiseSpec> CalibrateLaplaceHdpExact1d(double delta_l1,
                                                     double epsilon_hdp);

// Per-unit-sensitivity Gaussian noise multiplier (-8 log(1 - eps/2))^{-1/2}.
// Zero at eps = 2.
absl::StatusOr<double> NoiseScaleC(double epsilon_hdp);

// Sequential composition.
absl::StatusOr<double> ComposePdp(double e1, double e2, double lambda);
absl::StatusOr<double> ComposeHdp(double e1, double e2);
// h_k(x) through the recursion h_j = x + h_{j-1} - x h_{j-1} / 2.
absl::StatusOr<double> ComposeHdpK(double eps_per_step, int k);
// Closed form 2 (1 - (1 - x/2)^k) of the same recursion.
double ComposeHdpKClosedForm(double eps_per_step, int k);
absl::StatusOr<double> ComposePdpK(double eps_per_step, int k, double lambda);

// Inverts ComposeHdpK: the per-step epsilon whose k-fold composition is
// eps_total. eps_total = 2 returns 2.
absl::StatusOr<double> SolvePerStepEpsilon(double eps_total, int k);
absl::StatusOr<double> SolvePerStepEpsilonPdp(double eps_total, int k,
                                              double lambda);
// Per-mechanism budget e such that two mechanisms at e compose to
// eps_pair: e = eps_pair / (1 + sqrt(1 + t eps_pair)), t = lambda (lambda+1).
absl::StatusOr<double> SplitPairPdp(double eps_pair, double lambda);

// Parallel composition over disjoint data.
absl::StatusOr<double> ParallelComposeHdp(double e1, double e2);
// min(k^2 eps, 2).
absl::StatusOr<double> GroupPrivacyHdp(double eps, int k);

struct ApproxDp {
  double epsilon = 0.0;
  double delta = 0.0;
};
// (0, sqrt(eps))-DP.
absl::StatusOr<ApproxDp> HdpToApproxDp(double eps);
// mu = 2 Phi^{-1}((sqrt(eps) + 1) / 2). std::nullopt when eps >= 1, where no
// finite GDP parameter exists.
absl::StatusOr<std::optional<double>> HdpToGdp(double eps);

struct RdpGuarantee {
  double alpha = 0.0;
  double epsilon = 0.0;
  // The looser (alpha, alpha * eps) statement.
  double loose_epsilon = 0.0;
};
// Requires lambda > 0.
absl::StatusOr<RdpGuarantee> PdpToRdp(const PrivacyBudget& budget);
// Requires lambda > 0 or lambda < -1 and delta in (0, 1).
absl::StatusOr<double> PdpToApproxDp(const PrivacyBudget& budget, double delta);

// Running sequential composition for a fixed order. Value type.
class BudgetAccumulator {
 public:
  explicit BudgetAccumulator(double lambda) : lambda_(lambda) {}
  absl::Status Add(double epsilon);
  double spent() const { return spent_; }
  double lambda() const { return lambda_; }

 private:
  double lambda_;
  double spent_ = 0.0;
};

}  // namespace hdp

#endif  // HDP_PRIVACY_H_
