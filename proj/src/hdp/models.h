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

#ifndef HDP_MODELS_H_
#define HDP_MODELS_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hdp/random.h"

namespace hdp {

struct ModelDerivatives {
  double log_density = 0.0;
  // u = d log f / d theta.
  Eigen::VectorXd score;
  // du / d theta; symmetric.
  Eigen::MatrixXd score_jacobian;
  // d^2 f / d theta^2 = f (du/dtheta + u u^T).
  Eigen::MatrixXd density_hessian;
};

struct Sensitivities {
  // Bound on the change of the loss gradient between adjacent datasets.
  double gradient = 0.0;
  // Bound on the change of the loss Hessian between adjacent datasets.
  double hessian = 0.0;
};

// Parametric family f_theta on the real line.
class ParametricModel {
 public:
  virtual ~ParametricModel() = default;

  virtual int dim() const = 0;
  virtual std::string name() const = 0;
  virtual absl::Status CheckAdmissible(const Eigen::VectorXd& theta) const = 0;
  // Moves theta into the admissible region. Returns true when it changed.
  virtual bool Project(Eigen::VectorXd& theta) const = 0;

  virtual double LogDensity(const Eigen::VectorXd& theta, double x) const = 0;
  // Writes u and du/dtheta at x and returns log f_theta(x). score and
  // score_jacobian must already have size dim() and dim() x dim().
  virtual double ScoreTerms(const Eigen::VectorXd& theta, double x,
                            Eigen::VectorXd& score,
                            Eigen::MatrixXd& score_jacobian) const = 0;
  virtual Eigen::MatrixXd DensityHessian(const Eigen::VectorXd& theta,
                                         double x) const = 0;
  // Sharp-rate sensitivities at theta for sample size n and exponent p.
  virtual absl::StatusOr<Sensitivities> SharpSensitivities(
      const Eigen::VectorXd& theta, std::size_t n, double p) const = 0;
  virtual std::vector<double> Sample(const Eigen::VectorXd& theta,
                                     std::size_t count,
                                     RandomStream& rng) const = 0;

  absl::StatusOr<ModelDerivatives> Derivatives(const Eigen::VectorXd& theta,
                                               double x) const;
};

// N(mu, sigma^2) with theta = (mu, sigma).
class NormalModel : public ParametricModel {
 public:
  static constexpr double kDefaultSigmaMin = 0.05;

  explicit NormalModel(double sigma_min = kDefaultSigmaMin)
      : sigma_min_(sigma_min) {}

  int dim() const override { return 2; }
  std::string name() const override { return "normal"; }
  absl::Status CheckAdmissible(const Eigen::VectorXd& theta) const override;
  // Raises sigma to sigma_min.
  bool Project(Eigen::VectorXd& theta) const override;
  double LogDensity(const Eigen::VectorXd& theta, double x) const override;
  double ScoreTerms(const Eigen::VectorXd& theta, double x,
                    Eigen::VectorXd& score,
                    Eigen::MatrixXd& score_jacobian) const override;
  // Entries, with z = x - mu:
  //   [(z^2 - s^2)/s^4,  z (z^2 - 3 s^2)/s^5;
  //    .,                (z^4 - 5 s^2 z^2 + 2 s^4)/s^6] times f(x).
  Eigen::MatrixXd DensityHessian(const Eigen::VectorXd& theta,
                                 double x) const override;
  // Evaluated at max(sigma, sigma_min).
  absl::StatusOr<Sensitivities> SharpSensitivities(
      const Eigen::VectorXd& theta, std::size_t n, double p) const override;
  std::vector<double> Sample(const Eigen::VectorXd& theta, std::size_t count,
                             RandomStream& rng) const override;

  double sigma_min() const { return sigma_min_; }

 private:
  double sigma_min_;
};

// u = ((x - mu)/sigma^2, ((x - mu)^2 - sigma^2)/sigma^3).
absl::StatusOr<Eigen::Vector2d> NormalScore(double mu, double sigma, double x);
absl::StatusOr<Eigen::Matrix2d> NormalDensityHessian(double mu, double sigma,
                                                     double x);
// Delta_n = (2 sqrt 6 / sigma) n^{-1/p}, Delta_n^(H) = (sqrt 118 / sigma^2)
// n^{-1/p}; p in (1, 2].
absl::StatusOr<Sensitivities> NormalSensitivities(double sigma, std::size_t n,
                                                  double p);
// C n^{-1/2}.
absl::StatusOr<double> WeakSensitivityRate(double c, std::size_t n);

}  // namespace hdp

#endif  // HDP_MODELS_H_
