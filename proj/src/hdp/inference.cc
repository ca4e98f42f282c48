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

#include "hdp/inference.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Eigenvalues"
#include "Eigen/LU"
#include "absl/strings/str_format.h"
#include "hdp/privacy.h"
#include "hdp/special_functions.h"
#include "hdp/status.h"

namespace hdp {
namespace {

absl::Status CheckSquare(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    return DomainError(absl::StrFormat("%s must be a non-empty square matrix",
                                       what));
  }
  if (!m.allFinite()) {
    return NumericalError(absl::StrFormat("%s is not finite", what));
  }
  return absl::OkStatus();
}

bool UsesSquaredForm(CorrectionMode mode, Algorithm algo) {
  switch (mode) {
    case CorrectionMode::kVerbatim:
      return false;
    case CorrectionMode::kSquared:
      return true;
    case CorrectionMode::kCalibrated:
      return algo == Algorithm::kGradientDescent;
  }
  return false;
}

}  // namespace

absl::StatusOr<CorrectionMode> ParseCorrectionMode(absl::string_view name) {
  if (name == "verbatim") return CorrectionMode::kVerbatim;
  if (name == "squared") return CorrectionMode::kSquared;
  if (name == "calibrated") return CorrectionMode::kCalibrated;
  return DomainError(absl::StrFormat(
      "unknown correction '%s' (expected verbatim, squared or calibrated)",
      name));
}

std::string CorrectionModeName(CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::kVerbatim:
      return "verbatim";
    case CorrectionMode::kSquared:
      return "squared";
    case CorrectionMode::kCalibrated:
      return "calibrated";
  }
  return "calibrated";
}

absl::StatusOr<CovarianceMode> ParseCovarianceMode(absl::string_view name) {
  if (name == "sandwich") return CovarianceMode::kSandwich;
  if (name == "private") return CovarianceMode::kPrivate;
  return DomainError(absl::StrFormat(
      "unknown covariance mode '%s' (expected sandwich or private)", name));
}

std::string CovarianceModeName(CovarianceMode mode) {
  return mode == CovarianceMode::kSandwich ? "sandwich" : "private";
}

absl::StatusOr<Eigen::MatrixXd> ClipToPsd(const Eigen::MatrixXd& m) {
  HDP_RETURN_IF_ERROR(CheckSquare(m, "matrix"));
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    return NumericalError("eigendecomposition failed");
  }
  if (eig.eigenvalues().minCoeff() >= 0.0) return sym;
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd r =
      eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  // Exactly symmetric; the product is only symmetric up to rounding.
  return Eigen::MatrixXd(0.5 * (r + r.transpose()));
}

absl::StatusOr<Eigen::MatrixXd> AssembleSandwich(const Eigen::MatrixXd& hessian,
                                                 const Eigen::MatrixXd& meat,
                                                 double hessian_floor) {
  HDP_RETURN_IF_ERROR(CheckSquare(hessian, "Hessian"));
  HDP_RETURN_IF_ERROR(CheckSquare(meat, "meat matrix"));
  if (hessian.rows() != meat.rows()) {
    return DomainError("Hessian and meat matrix differ in size");
  }
  HDP_ASSIGN_OR_RETURN(Eigen::MatrixXd h,
                       RegularizeHessian(hessian, hessian_floor));
  HDP_ASSIGN_OR_RETURN(Eigen::MatrixXd m, ClipToPsd(meat));
  const Eigen::MatrixXd h_inv = h.inverse();
  if (!h_inv.allFinite()) return NumericalError("Hessian is singular");
  return ClipToPsd(h_inv * m * h_inv);
}

absl::StatusOr<Eigen::MatrixXd> SandwichCov(const McLossContext& ctx,
                                            const Eigen::VectorXd& theta,
                                            double hessian_floor) {
  HDP_ASSIGN_OR_RETURN(LossEvaluation e,
                       ctx.Evaluate(theta, kLossHessian | kLossMeat));
  return AssembleSandwich(e.hessian, e.meat, hessian_floor);
}

absl::StatusOr<PrivateCovRelease> PrivateCovFromEvaluation(
    const LossEvaluation& eval, double hessian_sensitivity, double eps,
    double lambda, RandomStream& rng, double hessian_floor) {
  if (!(hessian_sensitivity >= 0.0) || !std::isfinite(hessian_sensitivity)) {
    return DomainError("Hessian sensitivity must be non-negative");
  }
  HDP_ASSIGN_OR_RETURN(double multiplier, NoiseMultiplier(eps, lambda));
  const int m = static_cast<int>(eval.hessian.rows());
  const double scale = hessian_sensitivity * multiplier;
  PrivateCovRelease out;
  HDP_ASSIGN_OR_RETURN(out.hessian_noise, SymmetricNoiseMatrix(m, scale, rng));
  HDP_ASSIGN_OR_RETURN(out.meat_noise, SymmetricNoiseMatrix(m, scale, rng));
  HDP_ASSIGN_OR_RETURN(out.cov,
                       AssembleSandwich(eval.hessian + out.hessian_noise,
                                        eval.meat + out.meat_noise,
                                        hessian_floor));
  out.epsilon = eps;
  if (lambda == kHdpLambda) {
    out.epsilon_total_loose = std::min(3.0 * eps, kHdpCeiling);
    HDP_ASSIGN_OR_RETURN(out.epsilon_total,
                         ComposeHdpK(std::min(eps, kHdpCeiling), 3));
  } else {
    out.epsilon_total_loose = 3.0 * eps;
    HDP_ASSIGN_OR_RETURN(out.epsilon_total, ComposePdpK(eps, 3, lambda));
  }
  return out;
}

absl::StatusOr<PrivateCovRelease> PrivateCov(const McLossContext& ctx,
                                             const OptimizerConfig& config,
                                             const Eigen::VectorXd& theta,
                                             double eps, RandomStream& rng) {
  HDP_RETURN_IF_ERROR(ValidateOptimizerConfig(config));
  HDP_ASSIGN_OR_RETURN(LossEvaluation e,
                       ctx.Evaluate(theta, kLossHessian | kLossMeat));
  HDP_ASSIGN_OR_RETURN(Sensitivities sens,
                       LossSensitivities(ctx, config, theta));
  return PrivateCovFromEvaluation(e, sens.hessian, eps, config.budget.lambda,
                                  rng, config.hessian_floor);
}

CiInputs CiInputsFromTrace(const IterateTrace& trace,
                           const OptimizerConfig& config,
                           const Eigen::MatrixXd& cov, std::size_t n,
                           double level, CorrectionMode correction) {
  CiInputs in;
  in.estimate = trace.estimate();
  in.cov = cov;
  in.n = n;
  in.level = level;
  in.algorithm = config.algorithm;
  in.correction = correction;
  in.learning_rate = config.learning_rate;
  in.gradient_sensitivity = trace.last_gradient_sensitivity;
  in.multiplier = trace.plan.multiplier;
  in.perturbed_hessian = trace.last_perturbed_hessian;
  in.epsilon_total = trace.eps_spent.empty() ? 0.0 : trace.eps_spent.back();
  return in;
}

absl::StatusOr<Eigen::VectorXd> CorrectionTerms(const CiInputs& in) {
  const int m = static_cast<int>(in.estimate.size());
  if (!(in.gradient_sensitivity >= 0.0) || !(in.multiplier >= 0.0)) {
    return DomainError("sensitivity and noise multiplier must be >= 0");
  }
  const double dc = in.gradient_sensitivity * in.multiplier;
  const bool squared = UsesSquaredForm(in.correction, in.algorithm);
  const double eta = in.learning_rate;
  if (in.algorithm == Algorithm::kGradientDescent) {
    const double term = squared ? 2.0 * (eta * dc) * (eta * dc) : 2.0 * eta * dc;
    return Eigen::VectorXd::Constant(m, term);
  }
  if (dc == 0.0) return Eigen::VectorXd::Zero(m);
  HDP_RETURN_IF_ERROR(CheckSquare(in.perturbed_hessian, "perturbed Hessian"));
  if (in.perturbed_hessian.rows() != m) {
    return DomainError("perturbed Hessian does not match the estimate");
  }
  const Eigen::MatrixXd p = in.perturbed_hessian.inverse();
  if (!p.allFinite()) return NumericalError("perturbed Hessian is singular");
  const double scale = eta * eta * (squared ? dc * dc : dc);
  return Eigen::VectorXd((p * p).diagonal() * scale);
}

absl::StatusOr<CiReport> CorrectedCi(const CiInputs& in) {
  const int m = static_cast<int>(in.estimate.size());
  if (m == 0) return DomainError("estimate is empty");
  if (in.cov.rows() != m || in.cov.cols() != m) {
    return DomainError("covariance does not match the estimate");
  }
  if (in.n < 1) return DomainError("sample size must be >= 1");
  HDP_ASSIGN_OR_RETURN(double z, TwoSidedCriticalValue(in.level));
  HDP_ASSIGN_OR_RETURN(Eigen::VectorXd corr, CorrectionTerms(in));
  CiReport out;
  out.estimate = in.estimate;
  out.cov = in.cov;
  out.correction = corr;
  out.level = in.level;
  out.critical_value = z;
  out.epsilon_total = in.epsilon_total;
  const double n = static_cast<double>(in.n);
  for (int j = 0; j < m; ++j) {
    const double var = std::max(in.cov(j, j), 0.0) / n;
    const double plain = z * std::sqrt(var);
    const double corrected = z * std::sqrt(var + corr[j]);
    out.plain.push_back({in.estimate[j] - plain, in.estimate[j] + plain});
    out.corrected.push_back(
        {in.estimate[j] - corrected, in.estimate[j] + corrected});
  }
  return out;
}

}  // namespace hdp
