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

#include "hdp/models.h"

#include <cmath>
#include <algorithm>

#include "absl/strings/str_format.h"
#include "hdp/status.h"

namespace hdp {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;

absl::Status CheckSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return DomainError(
        absl::StrFormat("sigma must be positive and finite, got %g", sigma));
  }
  return absl::OkStatus();
}

absl::Status CheckExponent(double p) {
  if (!(p > 1.0 && p <= 2.0)) {
    return DomainError(
        absl::StrFormat("sensitivity exponent p must lie in (1, 2], got %g", p));
  }
  return absl::OkStatus();
}

absl::Status CheckSampleSize(std::size_t n) {
  if (n < 1) return DomainError("sample size must be >= 1");
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ModelDerivatives> ParametricModel::Derivatives(
    const Eigen::VectorXd& theta, double x) const {
  HDP_RETURN_IF_ERROR(CheckAdmissible(theta));
  ModelDerivatives out;
  out.score.resize(dim());
  out.score_jacobian.resize(dim(), dim());
  out.log_density = ScoreTerms(theta, x, out.score, out.score_jacobian);
  out.density_hessian = DensityHessian(theta, x);
  return out;
}

absl::Status NormalModel::CheckAdmissible(const Eigen::VectorXd& theta) const {
  if (theta.size() != 2) {
    return DomainError(absl::StrFormat(
        "normal model expects (mu, sigma), got %d values", theta.size()));
  }
  if (!std::isfinite(theta[0])) return DomainError("mu must be finite");
  return CheckSigma(theta[1]);
}

bool NormalModel::Project(Eigen::VectorXd& theta) const {
  if (theta[1] < sigma_min_) {
    theta[1] = sigma_min_;
    return true;
  }
  return false;
}

double NormalModel::LogDensity(const Eigen::VectorXd& theta, double x) const {
  const double z = (x - theta[0]) / theta[1];
  return -kHalfLogTwoPi - std::log(theta[1]) - 0.5 * z * z;
}

double NormalModel::ScoreTerms(const Eigen::VectorXd& theta, double x,
                               Eigen::VectorXd& score,
                               Eigen::MatrixXd& score_jacobian) const {
  const double s = theta[1];
  const double s2 = s * s;
  const double z = x - theta[0];
  const double z2 = z * z;
  score[0] = z / s2;
  score[1] = (z2 - s2) / (s2 * s);
  score_jacobian(0, 0) = -1.0 / s2;
  score_jacobian(0, 1) = -2.0 * z / (s2 * s);
  score_jacobian(1, 0) = score_jacobian(0, 1);
  score_jacobian(1, 1) = -3.0 * z2 / (s2 * s2) + 1.0 / s2;
  return -kHalfLogTwoPi - std::log(s) - 0.5 * z2 / s2;
}

Eigen::MatrixXd NormalModel::DensityHessian(const Eigen::VectorXd& theta,
                                            double x) const {
  const double s = theta[1];
  const double s2 = s * s;
  const double z = x - theta[0];
  const double z2 = z * z;
  const double f = std::exp(LogDensity(theta, x));
  Eigen::MatrixXd h(2, 2);
  h(0, 0) = (z2 - s2) / (s2 * s2);
  h(0, 1) = z * (z2 - 3.0 * s2) / (s2 * s2 * s);
  h(1, 0) = h(0, 1);
  h(1, 1) = (z2 * z2 - 5.0 * s2 * z2 + 2.0 * s2 * s2) / (s2 * s2 * s2);
  return f * h;
}

absl::StatusOr<Sensitivities> NormalModel::SharpSensitivities(
    const Eigen::VectorXd& theta, std::size_t n, double p) const {
  return NormalSensitivities(std::max(theta[1], sigma_min_), n, p);
}

std::vector<double> NormalModel::Sample(const Eigen::VectorXd& theta,
                                        std::size_t count,
                                        RandomStream& rng) const {
  std::vector<double> out(count);
  for (double& x : out) x = theta[0] + theta[1] * rng.StandardNormal();
  return out;
}

absl::StatusOr<Eigen::Vector2d> NormalScore(double mu, double sigma,
                                            double x) {
  HDP_RETURN_IF_ERROR(CheckSigma(sigma));
  const double z = x - mu;
  const double s2 = sigma * sigma;
  return Eigen::Vector2d(z / s2, (z * z - s2) / (s2 * sigma));
}

absl::StatusOr<Eigen::Matrix2d> NormalDensityHessian(double mu, double sigma,
                                                     double x) {
  HDP_RETURN_IF_ERROR(CheckSigma(sigma));
  Eigen::VectorXd theta(2);
  theta << mu, sigma;
  return Eigen::Matrix2d(NormalModel().DensityHessian(theta, x));
}

absl::StatusOr<Sensitivities> NormalSensitivities(double sigma, std::size_t n,
                                                  double p) {
  HDP_RETURN_IF_ERROR(CheckSigma(sigma));
  HDP_RETURN_IF_ERROR(CheckSampleSize(n));
  HDP_RETURN_IF_ERROR(CheckExponent(p));
  const double rate = std::pow(static_cast<double>(n), -1.0 / p);
  Sensitivities out;
  out.gradient = 2.0 * std::sqrt(6.0) / sigma * rate;
  out.hessian = std::sqrt(118.0) / (sigma * sigma) * rate;
  return out;
}

absl::StatusOr<double> WeakSensitivityRate(double c, std::size_t n) {
  HDP_RETURN_IF_ERROR(CheckSampleSize(n));
  if (!(c > 0.0) || !std::isfinite(c)) {
    return DomainError(
        absl::StrFormat("rate constant must be positive, got %g", c));
  }
  return c / std::sqrt(static_cast<double>(n));
}

}  // namespace hdp
