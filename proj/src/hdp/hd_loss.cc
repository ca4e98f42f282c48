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

#include "hdp/hd_loss.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "hdp/status.h"

namespace hdp {
namespace {

const double kLogRatioCap = std::log(kDensityRatioCap);

}  // namespace

absl::StatusOr<McLossContext> McLossContext::Create(
    const KdeEstimate& kde, std::shared_ptr<const ParametricModel> model,
    std::size_t r, RandomStream& rng) {
  if (r < 1) return DomainError("Monte Carlo sample count must be >= 1");
  HDP_ASSIGN_OR_RETURN(std::vector<double> samples, kde.Sample(r, rng));
  std::vector<double> g(r);
  for (std::size_t i = 0; i < r; ++i) g[i] = kde.Eval(samples[i]);
  return FromSamples(std::move(model), std::move(samples), std::move(g),
                     kde.n());
}

absl::StatusOr<McLossContext> McLossContext::FromSamples(
    std::shared_ptr<const ParametricModel> model, std::vector<double> samples,
    std::vector<double> g_values, std::size_t n_data) {
  if (model == nullptr) return DomainError("model must not be null");
  if (samples.empty()) return DomainError("no Monte Carlo samples");
  if (samples.size() != g_values.size()) {
    return DomainError("samples and density values differ in length");
  }
  if (n_data < 1) return DomainError("dataset size must be >= 1");
  std::vector<double> log_g(g_values.size());
  for (std::size_t i = 0; i < g_values.size(); ++i) {
    if (!(g_values[i] > 0.0) || !std::isfinite(g_values[i]) ||
        !std::isfinite(samples[i])) {
      return NumericalError(absl::StrFormat(
          "kernel density %g at Monte Carlo point %g is not positive",
          g_values[i], samples[i]));
    }
    log_g[i] = std::log(g_values[i]);
  }
  return McLossContext(std::move(model), std::move(samples), std::move(log_g),
                       n_data);
}

absl::StatusOr<LossEvaluation> McLossContext::Evaluate(
    const Eigen::VectorXd& theta, unsigned parts) const {
  HDP_RETURN_IF_ERROR(model_->CheckAdmissible(theta));
  const int m = model_->dim();
  const bool want_grad = parts & kLossGradient;
  const bool want_hess = parts & kLossHessian;
  const bool want_meat = parts & kLossMeat;
  const bool want_score = want_grad || want_hess || want_meat;

  Eigen::VectorXd u(m);
  Eigen::MatrixXd du(m, m);
  double sum_w = 0.0;
  Eigen::VectorXd sum_wu = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd sum_h = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd sum_meat = Eigen::MatrixXd::Zero(m, m);
  int capped = 0;

  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double x = samples_[i];
    const double log_f = want_score ? model_->ScoreTerms(theta, x, u, du)
                                    : model_->LogDensity(theta, x);
    double half_log_ratio = 0.5 * (log_f - log_g_[i]);
    if (std::isnan(half_log_ratio)) {
      return NumericalError(
          absl::StrFormat("density ratio undefined at sample %g", x));
    }
    if (half_log_ratio > kLogRatioCap) {
      half_log_ratio = kLogRatioCap;
      ++capped;
    }
    const double w = std::exp(half_log_ratio);
    sum_w += w;
    if (!want_score || w == 0.0) continue;
    for (int a = 0; a < m; ++a) {
      if (want_grad) sum_wu[a] += w * u[a];
      for (int b = 0; b < m; ++b) {
        const double uu = u[a] * u[b];
        if (want_hess) sum_h(a, b) += w * (uu + 2.0 * du(a, b));
        if (want_meat) sum_meat(a, b) += w * w * uu;
      }
    }
  }

  const double r = static_cast<double>(samples_.size());
  LossEvaluation out;
  out.capped = capped;
  out.loss = 2.0 * (2.0 - 2.0 * sum_w / r);
  if (want_grad) out.gradient = -2.0 / r * sum_wu;
  if (want_hess) {
    out.hessian = -1.0 / r * sum_h;
    out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  }
  if (want_meat) out.meat = sum_meat / r;
  if (!std::isfinite(out.loss) ||
      (want_grad && !out.gradient.allFinite()) ||
      (want_hess && !out.hessian.allFinite()) ||
      (want_meat && !out.meat.allFinite())) {
    return NumericalError("Monte Carlo loss evaluation is not finite");
  }
  return out;
}

absl::StatusOr<double> McLossContext::Loss(const Eigen::VectorXd& theta) const {
  HDP_ASSIGN_OR_RETURN(LossEvaluation e, Evaluate(theta, kLossValue));
  return e.loss;
}

absl::StatusOr<Eigen::VectorXd> McLossContext::Gradient(
    const Eigen::VectorXd& theta) const {
  HDP_ASSIGN_OR_RETURN(LossEvaluation e, Evaluate(theta, kLossGradient));
  return e.gradient;
}

absl::StatusOr<Eigen::MatrixXd> McLossContext::Hessian(
    const Eigen::VectorXd& theta) const {
  HDP_ASSIGN_OR_RETURN(LossEvaluation e, Evaluate(theta, kLossHessian));
  return e.hessian;
}

double McLossContext::ClampLoss(double loss) {
  return std::clamp(loss, 0.0, 4.0);
}

}  // namespace hdp
