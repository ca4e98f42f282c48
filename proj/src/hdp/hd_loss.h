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

// Monte Carlo Hellinger loss. With X_1..X_r drawn once from the kernel
// estimate g_n and w_i = sqrt(f_theta(X_i) / g_n(X_i)):
//   L(theta)    = 2 [2 - (2/r) sum w_i]
//   grad L      = -(2/r) sum w_i u_i
//   Hessian L   = (1/r) sum w_i u_i u_i^T - (2/r) sum w_i H_f(X_i) / f(X_i)
//               = -(1/r) sum w_i (u_i u_i^T + 2 du_i/dtheta)
//   meat        = (1/r) sum w_i^2 u_i u_i^T
// The samples are frozen, so every quantity is a deterministic smooth
// function of theta.

#ifndef HDP_HD_LOSS_H_
#define HDP_HD_LOSS_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "hdp/density.h"
#include "hdp/models.h"
#include "hdp/random.h"

namespace hdp {

// Cap on sqrt(f / g_n).
inline constexpr double kDensityRatioCap = 1e8;

enum LossParts : unsigned {
  kLossValue = 1u << 0,
  kLossGradient = 1u << 1,
  kLossHessian = 1u << 2,
  kLossMeat = 1u << 3,
  kLossAll = kLossValue | kLossGradient | kLossHessian | kLossMeat,
};

struct LossEvaluation {
  // Raw Monte Carlo loss. May leave [0, 4]; see ClampLoss.
  double loss = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  Eigen::MatrixXd meat;
  // Number of samples whose density ratio hit kDensityRatioCap.
  int capped = 0;
};

class McLossContext {
 public:
  // Draws r samples from kde and caches g_n at each of them.
  static absl::StatusOr<McLossContext> Create(
      const KdeEstimate& kde, std::shared_ptr<const ParametricModel> model,
      std::size_t r, RandomStream& rng);
  // Uses caller-supplied points and density values. n_data is the size of
  // the underlying dataset.
  static absl::StatusOr<McLossContext> FromSamples(
      std::shared_ptr<const ParametricModel> model,
      std::vector<double> samples, std::vector<double> g_values,
      std::size_t n_data);

  absl::StatusOr<LossEvaluation> Evaluate(const Eigen::VectorXd& theta,
                                          unsigned parts = kLossAll) const;
  absl::StatusOr<double> Loss(const Eigen::VectorXd& theta) const;
  absl::StatusOr<Eigen::VectorXd> Gradient(const Eigen::VectorXd& theta) const;
  absl::StatusOr<Eigen::MatrixXd> Hessian(const Eigen::VectorXd& theta) const;

  // Loss restricted to [0, 4] for display.
  static double ClampLoss(double loss);

  const ParametricModel& model() const { return *model_; }
  std::shared_ptr<const ParametricModel> shared_model() const {
    return model_;
  }
  const std::vector<double>& samples() const { return samples_; }
  std::size_t r() const { return samples_.size(); }
  std::size_t n_data() const { return n_data_; }

 private:
  McLossContext(std::shared_ptr<const ParametricModel> model,
                std::vector<double> samples, std::vector<double> log_g,
                std::size_t n_data)
      : model_(std::move(model)),
        samples_(std::move(samples)),
        log_g_(std::move(log_g)),
        n_data_(n_data) {}

  std::shared_ptr<const ParametricModel> model_;
  std::vector<double> samples_;
  std::vector<double> log_g_;
  std::size_t n_data_;
};

}  // namespace hdp

#endif  // HDP_HD_LOSS_H_
