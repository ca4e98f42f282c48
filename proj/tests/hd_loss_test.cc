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

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "hdp/density.h"
#include "hdp/models.h"
#include "hdp/optimize.h"
#include "hdp/random.h"
#include "test_util.h"

namespace hdp {
namespace {

using ::hdp::testing::CodeOf;
using ::hdp::testing::Unwrap;

std::shared_ptr<const ParametricModel> Normal() {
  return std::make_shared<NormalModel>();
}

double Density(double mu, double sigma, double x) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

Eigen::VectorXd Theta(double mu, double sigma) {
  Eigen::VectorXd t(2);
  t << mu, sigma;
  return t;
}

// Context over a Silverman KDE of n normal draws with r = 5 n.
McLossContext KdeContext(std::uint64_t seed, std::size_t n, double mu,
                         double sigma) {
  RandomStream rng({seed});
  std::vector<double> data(n);
  for (double& x : data) x = mu + sigma * rng.StandardNormal();
  const double h = Unwrap(SilvermanBandwidth(data));
  const KdeEstimate kde = Unwrap(KdeEstimate::Create(data, h));
  RandomStream mc = rng.Derive(2);
  return Unwrap(McLossContext::Create(kde, Normal(), 5 * n, mc));
}

TEST(McLossTest, ZeroWhenModelMatchesDensity) {
  const std::vector<double> xs = {-1.0, 0.0, 0.3, 2.0};
  std::vector<double> g;
  for (double x : xs) g.push_back(Density(0.0, 1.0, x));
  const McLossContext ctx =
      Unwrap(McLossContext::FromSamples(Normal(), xs, g, xs.size()));
  EXPECT_NEAR(Unwrap(ctx.Loss(Theta(0.0, 1.0))), 0.0, 1e-15);
}

TEST(McLossTest, FourOnDisjointSupport) {
  const std::vector<double> xs = {100.0, 120.0};
  const McLossContext ctx =
      Unwrap(McLossContext::FromSamples(Normal(), xs, {0.5, 0.5}, 2));
  EXPECT_EQ(Unwrap(ctx.Loss(Theta(0.0, 1.0))), 4.0);
}

TEST(McLossTest, NegativeWhenRatioExceedsOne) {
  const std::vector<double> xs = {-0.5, 0.1, 1.2};
  std::vector<double> g;
  for (double x : xs) g.push_back(Density(0.0, 1.0, x) / 4.0);
  const McLossContext ctx =
      Unwrap(McLossContext::FromSamples(Normal(), xs, g, 3));
  const double loss = Unwrap(ctx.Loss(Theta(0.0, 1.0)));
  EXPECT_NEAR(loss, -4.0, 1e-14);
  EXPECT_EQ(McLossContext::ClampLoss(loss), 0.0);
  EXPECT_EQ(McLossContext::ClampLoss(4.5), 4.0);
  EXPECT_EQ(McLossContext::ClampLoss(1.25), 1.25);
}

TEST(McGradientTest, SingleSampleExample) {
  const McLossContext ctx = Unwrap(
      McLossContext::FromSamples(Normal(), {1.0}, {Density(0.0, 1.0, 1.0)}, 1));
  const Eigen::VectorXd g = Unwrap(ctx.Gradient(Theta(0.0, 1.0)));
  EXPECT_NEAR(g[0], -2.0, 1e-15);
  EXPECT_NEAR(g[1], 0.0, 1e-15);
}

TEST(McGradientTest, MeanComponentVanishesAtSamples) {
  const std::vector<double> xs = {3.0, 3.0, 3.0};
  const McLossContext ctx =
      Unwrap(McLossContext::FromSamples(Normal(), xs, {0.2, 0.1, 0.4}, 3));
  EXPECT_EQ(Unwrap(ctx.Gradient(Theta(3.0, 1.7)))[0], 0.0);
}

TEST(McLossTest, EvaluationMatchesDefinitions) {
  const std::vector<double> xs = {4.0, 5.5, 6.1, 2.2, 7.9};
  const std::vector<double> g = {0.15, 0.2, 0.18, 0.05, 0.02};
  const McLossContext ctx = Unwrap(McLossContext::FromSamples(Normal(), xs, g, 5));
  const Eigen::VectorXd theta = Theta(5.2, 1.8);
  const LossEvaluation e = Unwrap(ctx.Evaluate(theta));
  double sum_w = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d meat = Eigen::Matrix2d::Zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = Density(5.2, 1.8, xs[i]);
    const double w = std::sqrt(f / g[i]);
    const Eigen::Vector2d u = Unwrap(NormalScore(5.2, 1.8, xs[i]));
    const Eigen::Matrix2d hf = Unwrap(NormalDensityHessian(5.2, 1.8, xs[i]));
    sum_w += w;
    grad += w * u;
    hess += w * u * u.transpose() - 2.0 * w * hf / f;
    meat += w * w * u * u.transpose();
  }
  const double r = xs.size();
  EXPECT_NEAR(e.loss, 2.0 * (2.0 - 2.0 * sum_w / r), 1e-13);
  EXPECT_LT((e.gradient + 2.0 / r * grad).norm(), 1e-13);
  EXPECT_LT((e.hessian - hess / r).norm(), 1e-12);
  EXPECT_LT((e.meat - meat / r).norm(), 1e-12);
  EXPECT_EQ(e.capped, 0);
}

// Central differences with the samples frozen: the gradient to 1e-5 and the
// Hessian to 1e-4 in relative max norm, over 100 random (theta, dataset).
TEST(McDerivativesTest, MatchFiniteDifferences) {
  RandomStream rng({41});
  double worst_grad = 0.0;
  double worst_hess = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double mu0 = rng.Uniform(-2.0, 6.0);
    const double s0 = rng.Uniform(0.5, 3.0);
    const std::size_t n = 30 + rng.UniformIndex(70);
    const McLossContext ctx = KdeContext(1000 + trial, n, mu0, s0);
    const Eigen::VectorXd theta =
        Theta(mu0 + s0 * rng.Uniform(-0.5, 0.5), s0 * rng.Uniform(0.7, 1.4));
    const LossEvaluation e = Unwrap(ctx.Evaluate(theta));
    Eigen::Vector2d fd_grad;
    Eigen::Matrix2d fd_hess;
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-5 * std::max(1.0, std::abs(theta[j]));
      Eigen::VectorXd plus = theta;
      Eigen::VectorXd minus = theta;
      plus[j] += h;
      minus[j] -= h;
      fd_grad[j] =
          (Unwrap(ctx.Loss(plus)) - Unwrap(ctx.Loss(minus))) / (2.0 * h);
      fd_hess.col(j) =
          (Unwrap(ctx.Gradient(plus)) - Unwrap(ctx.Gradient(minus))) /
          (2.0 * h);
    }
    const double grad_err = (e.gradient - fd_grad).cwiseAbs().maxCoeff() /
                            fd_grad.cwiseAbs().maxCoeff();
    const double hess_err = (e.hessian - fd_hess).cwiseAbs().maxCoeff() /
                            fd_hess.cwiseAbs().maxCoeff();
    worst_grad = std::max(worst_grad, grad_err);
    worst_hess = std::max(worst_hess, hess_err);
    EXPECT_EQ(e.hessian(0, 1), e.hessian(1, 0));
  }
  EXPECT_LT(worst_grad, 1e-5);
  EXPECT_LT(worst_hess, 1e-4);
}

// At the minimizer on a large clean sample the Hessian approaches the
// Fisher information diag(1/sigma^2, 2/sigma^2).
TEST(McHessianTest, ApproachesFisherInformationAtMinimizer) {
  const McLossContext ctx = KdeContext(42, 5000, 5.0, 2.0);
  const IterateTrace trace =
      Unwrap(RunNewtonRaphson(ctx, Theta(5.0, 2.0), 30, 1.0));
  const Eigen::VectorXd theta = trace.estimate();
  EXPECT_LT(Unwrap(ctx.Gradient(theta)).norm(), 1e-8);
  const Eigen::MatrixXd h = Unwrap(ctx.Hessian(theta));
  const double s2 = theta[1] * theta[1];
  EXPECT_NEAR(h(0, 0), 1.0 / s2, 0.1 / s2);
  EXPECT_NEAR(h(1, 1), 2.0 / s2, 0.2 / s2);
  EXPECT_LT(std::abs(h(0, 1)), 0.1 / s2);
}

TEST(McLossTest, DescendsAlongGradientSteps) {
  const McLossContext ctx = KdeContext(43, 1000, 5.0, 2.0);
  const IterateTrace trace =
      Unwrap(RunGradientDescent(ctx, Theta(1.0, 1.0), 10, 0.5));
  ASSERT_EQ(trace.losses.size(), 11u);
  for (std::size_t k = 1; k < trace.losses.size(); ++k) {
    EXPECT_LE(trace.losses[k], trace.losses[k - 1]) << k;
  }
}

TEST(McLossTest, ClampedLossInRange) {
  const McLossContext ctx = KdeContext(44, 200, 5.0, 2.0);
  RandomStream rng({45});
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd theta =
        Theta(rng.Uniform(-10.0, 20.0), rng.Uniform(0.05, 10.0));
    const double c = McLossContext::ClampLoss(Unwrap(ctx.Loss(theta)));
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 4.0);
  }
}

TEST(McLossTest, CapsExtremeDensityRatios) {
  const McLossContext ctx =
      Unwrap(McLossContext::FromSamples(Normal(), {0.0, 0.5}, {1e-300, 0.3}, 2));
  const LossEvaluation e = Unwrap(ctx.Evaluate(Theta(0.0, 1.0)));
  EXPECT_EQ(e.capped, 1);
  EXPECT_TRUE(std::isfinite(e.loss));
  const double w1 = std::sqrt(Density(0.0, 1.0, 0.5) / 0.3);
  EXPECT_NEAR(e.loss, 2.0 * (2.0 - (kDensityRatioCap + w1)), 1e-6);
}

TEST(McLossTest, RejectsInvalidInputs) {
  EXPECT_EQ(CodeOf(McLossContext::FromSamples(Normal(), {0.0}, {0.0}, 1)),
            absl::StatusCode::kAborted);
  EXPECT_EQ(CodeOf(McLossContext::FromSamples(Normal(), {0.0, 1.0}, {0.1}, 1)),
            absl::StatusCode::kInvalidArgument);
  const McLossContext ctx =
      Unwrap(McLossContext::FromSamples(Normal(), {0.0}, {0.3}, 1));
  EXPECT_EQ(CodeOf(ctx.Loss(Theta(0.0, -1.0))),
            absl::StatusCode::kInvalidArgument);
}

TEST(McLossContextTest, CreateDrawsFromKde) {
  const KdeEstimate kde = Unwrap(KdeEstimate::Create({0.0, 10.0}, 0.5));
  RandomStream rng({46});
  const McLossContext ctx =
      Unwrap(McLossContext::Create(kde, Normal(), 400, rng));
  EXPECT_EQ(ctx.r(), 400u);
  EXPECT_EQ(ctx.n_data(), 2u);
  for (double x : ctx.samples()) {
    EXPECT_TRUE(std::abs(x) <= 0.5 || std::abs(x - 10.0) <= 0.5) << x;
  }
  // Same stream path, same samples.
  RandomStream again({46});
  EXPECT_EQ(Unwrap(McLossContext::Create(kde, Normal(), 400, again)).samples(),
            ctx.samples());
}

}  // namespace
}  // namespace hdp
