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

#include "hdp/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "hdp/divergence.h"
#include "hdp/root_finding.h"
#include "hdp/special_functions.h"
#include "hdp/status.h"

namespace hdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// 1 + t eps, snapped to 0 within a few ulps so that eps = -1 / t lands on
// the vacuous bound despite rounding.
double BoundSlack(double t, double eps) {
  const double slack = 1.0 + t * eps;
  return std::abs(slack) <= 8.0 * std::numeric_limits<double>::epsilon()
             ? 0.0
             : slack;
}

absl::Status CheckSensitivity(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    return DomainError(absl::StrFormat(
        "sensitivity must be non-negative and finite, got %g", delta));
  }
  return absl::OkStatus();
}

absl::Status CheckDim(int dim) {
  if (dim < 1) {
    return DomainError(absl::StrFormat("dimension must be >= 1, got %d", dim));
  }
  return absl::OkStatus();
}

absl::Status CheckHdpEpsilon(double eps, bool allow_zero) {
  const bool low_ok = allow_zero ? eps >= 0.0 : eps > 0.0;
  if (!low_ok || !(eps <= kHdpCeiling)) {
    return DomainError(absl::StrFormat(
        "HDP epsilon must lie in %s0, 2], got %g", allow_zero ? "[" : "(",
        eps));
  }
  return absl::OkStatus();
}

absl::Status CheckSteps(int k) {
  if (k < 1) {
    return DomainError(absl::StrFormat("step count must be >= 1, got %d", k));
  }
  return absl::OkStatus();
}

// Admissibility of a non-negative per-mechanism epsilon (zero allowed).
absl::Status CheckComposable(double eps, double lambda) {
  if (!(eps >= 0.0) || std::isnan(lambda)) {
    return DomainError(
        absl::StrFormat("epsilon must be non-negative, got %g", eps));
  }
  const double t = PowerProduct(lambda);
  if (t < 0.0 && BoundSlack(t, eps) < 0.0) {
    return DomainError(absl::StrFormat(
        "epsilon %g exceeds the admissible maximum %g for lambda %g", eps,
        -1.0 / t, lambda));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateBudget(const PrivacyBudget& budget) {
  if (!std::isfinite(budget.lambda)) {
    return DomainError("lambda must be finite");
  }
  if (!(budget.epsilon > 0.0)) {
    return DomainError(
        absl::StrFormat("epsilon must be positive, got %g", budget.epsilon));
  }
  return CheckComposable(budget.epsilon, budget.lambda);
}

bool IsVacuous(const PrivacyBudget& budget) {
  if (std::isinf(budget.epsilon)) return true;
  const double t = PowerProduct(budget.lambda);
  return t < 0.0 && BoundSlack(t, budget.epsilon) <= 0.0;
}

absl::StatusOr<NoiseSpec> CalibrateGaussianPdp(double delta_l2,
                                               const PrivacyBudget& budget,
                                               int dim) {
  HDP_RETURN_IF_ERROR(CheckSensitivity(delta_l2));
  HDP_RETURN_IF_ERROR(ValidateBudget(budget));
  HDP_RETURN_IF_ERROR(CheckDim(dim));
  NoiseSpec spec{NoiseKind::kGaussian, 0.0, delta_l2, dim};
  if (delta_l2 == 0.0 || IsVacuous(budget)) return spec;
  double variance;
  if (IsKlBranch(budget.lambda)) {
    variance = delta_l2 * delta_l2 / (2.0 * budget.epsilon);
  } else {
    const double t = PowerProduct(budget.lambda);
    variance =
        delta_l2 * delta_l2 * t / (2.0 * std::log1p(t * budget.epsilon));
  }
  spec.scale = std::sqrt(variance);
  return spec;
}

absl::StatusOr<NoiseSpec> CalibrateGaussianHdp(double delta_l2,
                                               double epsilon_hdp, int dim) {
  HDP_RETURN_IF_ERROR(CheckSensitivity(delta_l2));
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(epsilon_hdp, /*allow_zero=*/false));
  HDP_RETURN_IF_ERROR(CheckDim(dim));
  NoiseSpec spec{NoiseKind::kGaussian, 0.0, delta_l2, dim};
  if (delta_l2 == 0.0 || epsilon_hdp == kHdpCeiling) return spec;
  const double variance =
      delta_l2 * delta_l2 / (-8.0 * std::log1p(-0.5 * epsilon_hdp));
  spec.scale = std::sqrt(variance);
  return spec;
}

absl::StatusOr<NoiseSpec> CalibrateLaplacePdp(double delta_l1,
                                              const PrivacyBudget& budget,
                                              int dim) {
  HDP_RETURN_IF_ERROR(CheckSensitivity(delta_l1));
  HDP_RETURN_IF_ERROR(ValidateBudget(budget));
  HDP_RETURN_IF_ERROR(CheckDim(dim));
  NoiseSpec spec{NoiseKind::kLaplace, 0.0, delta_l1, dim};
  if (delta_l1 == 0.0 || IsVacuous(budget)) return spec;
  const double lambda = budget.lambda;
  if (IsKlBranch(lambda)) {
    spec.scale = delta_l1 / budget.epsilon;
    return spec;
  }
  // The larger of the two ratios; taking the larger numerator before
  // dividing would pick the wrong term whenever the logarithm is negative.
  const double log_term = std::log1p(PowerProduct(lambda) * budget.epsilon);
  const double first = Sign(lambda) * (lambda + 1.0) * delta_l1 / log_term;
  const double second = Sign(lambda + 1.0) * lambda * delta_l1 / log_term;
  spec.scale = std::max(first, second);
  return spec;
}

absl::StatusOr<NoiseSpec> CalibrateLaplaceHdpExact1d(double delta_l1,
                                                     double epsilon_hdp) {
  if (!(delta_l1 > 0.0) || !std::isfinite(delta_l1)) {
    return DomainError(absl::StrFormat(
        "sensitivity must be positive and finite, got %g", delta_l1));
  }
  if (!(epsilon_hdp > 0.0 && epsilon_hdp < kHdpCeiling)) {
    return DomainError(absl::StrFormat(
        "HDP epsilon must lie in (0, 2), got %g", epsilon_hdp));
  }
  // Squared Hellinger distance as a function of a = delta / b; increasing
  // from 0 to 2.
  auto hellinger_of_ratio = [](double a) {
    return -2.0 * std::expm1(-0.5 * a + std::log1p(0.5 * a));
  };
  BisectionOptions options;
  options.max_expansions = 2000;
  HDP_ASSIGN_OR_RETURN(
      const double ratio,
      SolveMonotone(hellinger_of_ratio, epsilon_hdp, 0.0, 1.0, options));
  if (!(ratio > 0.0)) return NumericalError("degenerate Laplace scale");
  return NoiseSpec{NoiseKind::kLaplace, delta_l1 / ratio, delta_l1, 1};
}

absl::StatusOr<double> NoiseScaleC(double epsilon_hdp) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(epsilon_hdp, /*allow_zero=*/false));
  if (epsilon_hdp == kHdpCeiling) return 0.0;
  return 1.0 / std::sqrt(-8.0 * std::log1p(-0.5 * epsilon_hdp));
}

absl::StatusOr<double> ComposePdp(double e1, double e2, double lambda) {
  if (!std::isfinite(lambda)) return DomainError("lambda must be finite");
  HDP_RETURN_IF_ERROR(CheckComposable(e1, lambda));
  HDP_RETURN_IF_ERROR(CheckComposable(e2, lambda));
  if (std::isinf(e1) || std::isinf(e2)) return kInf;
  return e1 + e2 + PowerProduct(lambda) * e1 * e2;
}

absl::StatusOr<double> ComposeHdp(double e1, double e2) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(e1, /*allow_zero=*/true));
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(e2, /*allow_zero=*/true));
  return e1 + e2 - 0.5 * e1 * e2;
}

absl::StatusOr<double> ComposeHdpK(double eps_per_step, int k) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(eps_per_step, /*allow_zero=*/true));
  HDP_RETURN_IF_ERROR(CheckSteps(k));
  double h = eps_per_step;
  for (int j = 2; j <= k; ++j) {
    h = eps_per_step + h - 0.5 * eps_per_step * h;
  }
  return h;
}

double ComposeHdpKClosedForm(double eps_per_step, int k) {
  return -2.0 * std::expm1(k * std::log1p(-0.5 * eps_per_step));
}

absl::StatusOr<double> ComposePdpK(double eps_per_step, int k, double lambda) {
  if (!std::isfinite(lambda)) return DomainError("lambda must be finite");
  HDP_RETURN_IF_ERROR(CheckComposable(eps_per_step, lambda));
  HDP_RETURN_IF_ERROR(CheckSteps(k));
  if (std::isinf(eps_per_step)) return kInf;
  const double t = PowerProduct(lambda);
  double e = eps_per_step;
  for (int j = 2; j <= k; ++j) {
    e = eps_per_step + e + t * eps_per_step * e;
  }
  return e;
}

absl::StatusOr<double> SolvePerStepEpsilon(double eps_total, int k) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(eps_total, /*allow_zero=*/false));
  HDP_RETURN_IF_ERROR(CheckSteps(k));
  if (k == 1 || eps_total == kHdpCeiling) return eps_total;
  auto h_k = [k](double x) {
    double h = x;
    for (int j = 2; j <= k; ++j) h = x + h - 0.5 * x * h;
    return h;
  };
  // h_k(eps/k) <= eps <= h_k(eps) brackets the root.
  return SolveMonotone(h_k, eps_total, eps_total / k, eps_total);
}

absl::StatusOr<double> SolvePerStepEpsilonPdp(double eps_total, int k,
                                              double lambda) {
  const PrivacyBudget budget{lambda, eps_total};
  HDP_RETURN_IF_ERROR(ValidateBudget(budget));
  HDP_RETURN_IF_ERROR(CheckSteps(k));
  if (k == 1 || IsVacuous(budget)) return eps_total;
  if (IsKlBranch(lambda)) return eps_total / k;
  const double t = PowerProduct(lambda);
  auto e_k = [k, t](double x) {
    double e = x;
    for (int j = 2; j <= k; ++j) e = x + e + t * x * e;
    return e;
  };
  BisectionOptions options;
  options.abs_tolerance = 1e-12 * std::max(1.0, eps_total);
  return SolveMonotone(e_k, eps_total, 0.0, eps_total, options);
}

absl::StatusOr<double> SplitPairPdp(double eps_pair, double lambda) {
  if (!std::isfinite(lambda)) return DomainError("lambda must be finite");
  HDP_RETURN_IF_ERROR(CheckComposable(eps_pair, lambda));
  if (std::isinf(eps_pair)) return kInf;
  const double t = PowerProduct(lambda);
  return eps_pair / (1.0 + std::sqrt(std::max(0.0, 1.0 + t * eps_pair)));
}

absl::StatusOr<double> ParallelComposeHdp(double e1, double e2) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(e1, /*allow_zero=*/true));
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(e2, /*allow_zero=*/true));
  return std::max(e1, e2);
}

absl::StatusOr<double> GroupPrivacyHdp(double eps, int k) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(eps, /*allow_zero=*/true));
  HDP_RETURN_IF_ERROR(CheckSteps(k));
  return std::min(static_cast<double>(k) * k * eps, kHdpCeiling);
}

absl::StatusOr<ApproxDp> HdpToApproxDp(double eps) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(eps, /*allow_zero=*/true));
  return ApproxDp{0.0, std::sqrt(eps)};
}

absl::StatusOr<std::optional<double>> HdpToGdp(double eps) {
  HDP_RETURN_IF_ERROR(CheckHdpEpsilon(eps, /*allow_zero=*/true));
  if (eps >= 1.0) return std::optional<double>();
  HDP_ASSIGN_OR_RETURN(const double z,
                       NormalQuantile(0.5 * (std::sqrt(eps) + 1.0)));
  return std::optional<double>(2.0 * z);
}

absl::StatusOr<RdpGuarantee> PdpToRdp(const PrivacyBudget& budget) {
  if (!(budget.lambda > 0.0) || !std::isfinite(budget.lambda)) {
    return UnsupportedError(absl::StrFormat(
        "RDP conversion requires lambda > 0, got %g", budget.lambda));
  }
  if (!(budget.epsilon >= 0.0) || !std::isfinite(budget.epsilon)) {
    return DomainError(absl::StrFormat(
        "epsilon must be non-negative and finite, got %g", budget.epsilon));
  }
  const double t = PowerProduct(budget.lambda);
  RdpGuarantee out;
  out.alpha = budget.lambda + 1.0;
  out.epsilon = std::log1p(t * budget.epsilon) / budget.lambda;
  out.loose_epsilon = out.alpha * budget.epsilon;
  return out;
}

absl::StatusOr<double> PdpToApproxDp(const PrivacyBudget& budget,
                                     double delta) {
  const double lambda = budget.lambda;
  if (!(lambda > 0.0 || lambda < -1.0) || !std::isfinite(lambda)) {
    return UnsupportedError(absl::StrFormat(
        "(eps, delta) conversion requires lambda > 0 or lambda < -1, got %g",
        lambda));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return DomainError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  if (!(budget.epsilon >= 0.0) || !std::isfinite(budget.epsilon)) {
    return DomainError(absl::StrFormat(
        "epsilon must be non-negative and finite, got %g", budget.epsilon));
  }
  const double log_term =
      std::log1p(PowerProduct(lambda) * budget.epsilon) - std::log(delta);
  if (lambda > 0.0) return log_term / lambda;
  return -log_term / (lambda + 1.0);
}

absl::Status BudgetAccumulator::Add(double epsilon) {
  HDP_ASSIGN_OR_RETURN(spent_, ComposePdp(spent_, epsilon, lambda_));
  return absl::OkStatus();
}

}  // namespace hdp
