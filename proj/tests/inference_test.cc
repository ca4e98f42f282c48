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

#include <cmath>
#include <memory>
#include <vector>

#include "Eigen/Eigenvalues"
#include "Eigen/LU"
#include "gtest/gtest.h"
#include "hdp/density.h"
#include "hdp/hd_loss.h"
#include "hdp/models.h"
#include "hdp/optimize.h"
#include "hdp/privacy.h"
#include "hdp/random.h"
#include "test_util.h"

namespace hdp {
namespace {

using ::hdp::testing::CodeOf;
using ::hdp::testing::Unwrap;

Eigen::VectorXd Theta(double mu, double sigma) {
  Eigen::VectorXd t(2);
  t << mu, sigma;
  return t;
}

McLossContext Context(std::uint64_t seed, std::size_t n) {
  RandomStream rng({seed});
  std::vector<double> data(n);
  for (double& x : data) x = 5.0 + 2.0 * rng.StandardNormal();
  const KdeEstimate kde =
      Unwrap(KdeEstimate::Create(data, Unwrap(SilvermanBandwidth(data))));
  RandomStream mc = rng.Derive(1);
  return Unwrap(
      McLossContext::Create(kde, std::make_shared<NormalModel>(), 5 * n, mc));
}

double MinEigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

TEST(ClipToPsdTest, RepairsIndefiniteMatrices) {
  RandomStream rng({1});
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd w = Unwrap(SymmetricNoiseMatrix(3, 1.0, rng));
    const Eigen::MatrixXd c = Unwrap(ClipToPsd(w));
    EXPECT_EQ(c, c.transpose().eval());
    EXPECT_GE(MinEigenvalue(c), -1e-14);
  }
  Eigen::MatrixXd psd(2, 2);
  psd << 2.0, 1.0, 1.0, 2.0;
  EXPECT_EQ(Unwrap(ClipToPsd(psd)), psd);
}

TEST(AssembleSandwichTest, HandValues) {
  Eigen::MatrixXd h(2, 2);
  h << 2.0, 0.0, 0.0, 4.0;
  const Eigen::MatrixXd meat = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd v = Unwrap(AssembleSandwich(h, meat, 1e-3));
  EXPECT_NEAR(v(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(v(1, 1), 1.0 / 16.0, 1e-15);
  EXPECT_EQ(v(0, 1), 0.0);
}

// Scaling the gradient by s scales the meat, and hence the sandwich, by s^2.
TEST(AssembleSandwichTest, QuadraticInGradientScale) {
  const McLossContext ctx = Context(2, 500);
  const LossEvaluation e = Unwrap(ctx.Evaluate(Theta(5.1, 1.9)));
  const Eigen::MatrixXd v = Unwrap(AssembleSandwich(e.hessian, e.meat, 1e-3));
  for (double s : {0.5, 3.0}) {
    const Eigen::MatrixXd vs =
        Unwrap(AssembleSandwich(e.hessian, s * s * e.meat, 1e-3));
    EXPECT_LT((vs - s * s * v).cwiseAbs().maxCoeff(),
              1e-12 * s * s * v.cwiseAbs().maxCoeff());
  }
}

TEST(AssembleSandwichTest, RejectsMismatchedShapes) {
  EXPECT_EQ(CodeOf(AssembleSandwich(Eigen::MatrixXd::Identity(2, 2),
                                    Eigen::MatrixXd::Identity(3, 3), 1e-3)),
            absl::StatusCode::kInvalidArgument);
}

TEST(SandwichCovTest, PsdForRandomInputs) {
  RandomStream rng({3});
  for (int trial = 0; trial < 20; ++trial) {
    const McLossContext ctx = Context(100 + trial, 200);
    const Eigen::VectorXd theta =
        Theta(rng.Uniform(3.0, 7.0), rng.Uniform(1.0, 3.5));
    const Eigen::MatrixXd v = Unwrap(SandwichCov(ctx, theta));
    EXPECT_EQ(v, v.transpose().eval());
    EXPECT_GE(MinEigenvalue(v), -1e-12);
  }
}

// Near the model the sandwich approaches the inverse Fisher information, so
// the standard error of mu is about 2 / sqrt(1000). The band applies to the
// mean over datasets; single datasets scatter about 0.003 around it.
TEST(SandwichCovTest, StandardErrorBandOnCleanData) {
  const int seeds = 20;
  double mean_se = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    const McLossContext ctx = Context(300 + seed, 1000);
    const IterateTrace fit = Unwrap(RunNewtonRaphson(ctx, Theta(5, 2), 20, 1.0));
    const Eigen::MatrixXd v = Unwrap(SandwichCov(ctx, fit.estimate()));
    const double se = std::sqrt(v(0, 0) / 1000.0);
    mean_se += se / seeds;
  }
  EXPECT_GE(mean_se, 0.06);
  EXPECT_LE(mean_se, 0.09);
}

TEST(PrivateCovTest, CeilingBudgetEqualsSandwich) {
  const McLossContext ctx = Context(10, 1000);
  OptimizerConfig config;
  const Eigen::VectorXd theta = Theta(5.0, 2.0);
  RandomStream rng({10, 5});
  const PrivateCovRelease rel = Unwrap(PrivateCov(ctx, config, theta, 2.0, rng));
  EXPECT_EQ(rel.cov, Unwrap(SandwichCov(ctx, theta)));
  EXPECT_TRUE(rel.hessian_noise.isZero(0.0));
  EXPECT_TRUE(rel.meat_noise.isZero(0.0));
  EXPECT_EQ(rel.epsilon_total, 2.0);
  EXPECT_EQ(rel.epsilon_total_loose, 2.0);
}

TEST(PrivateCovTest, PsdAndLedger) {
  const McLossContext ctx = Context(11, 300);
  OptimizerConfig config;
  const Eigen::VectorXd theta = Theta(5.0, 2.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rng({11, seed});
    const PrivateCovRelease rel =
        Unwrap(PrivateCov(ctx, config, theta, 0.3, rng));
    EXPECT_EQ(rel.cov, rel.cov.transpose().eval());
    EXPECT_GE(MinEigenvalue(rel.cov), -1e-12);
    EXPECT_EQ(rel.hessian_noise, rel.hessian_noise.transpose().eval());
  }
  RandomStream rng({12});
  const PrivateCovRelease rel = Unwrap(PrivateCov(ctx, config, theta, 0.5, rng));
  EXPECT_EQ(rel.epsilon, 0.5);
  EXPECT_DOUBLE_EQ(rel.epsilon_total_loose, 1.5);
  EXPECT_EQ(rel.epsilon_total, Unwrap(ComposeHdpK(0.5, 3)));
  EXPECT_LT(rel.epsilon_total, rel.epsilon_total_loose);
  RandomStream big({13});
  EXPECT_EQ(Unwrap(PrivateCov(ctx, config, theta, 0.9, big)).epsilon_total_loose,
            2.0);
}

CiInputs BaseInputs(Algorithm algo) {
  CiInputs in;
  in.estimate = Theta(5.0, 2.0);
  in.cov = Eigen::MatrixXd::Identity(2, 2) * 4.0;
  in.cov(1, 1) = 2.0;
  in.n = 1000;
  in.algorithm = algo;
  in.learning_rate = 0.5;
  in.gradient_sensitivity = 0.04;
  in.multiplier = 2.5;
  in.perturbed_hessian = Eigen::MatrixXd::Identity(2, 2) * 0.25;
  in.perturbed_hessian(1, 1) = 0.5;
  return in;
}

TEST(CriticalValueTest, NinetyFivePercent) {
  CiInputs in = BaseInputs(Algorithm::kGradientDescent);
  EXPECT_NEAR(Unwrap(CorrectedCi(in)).critical_value, 1.959964, 1e-6);
}

TEST(CorrectionTermsTest, GradientDescentForms) {
  CiInputs in = BaseInputs(Algorithm::kGradientDescent);
  const double dc = 0.04 * 2.5;
  in.correction = CorrectionMode::kVerbatim;
  EXPECT_NEAR(Unwrap(CorrectionTerms(in))[0], 2.0 * 0.5 * dc, 1e-15);
  in.correction = CorrectionMode::kSquared;
  EXPECT_NEAR(Unwrap(CorrectionTerms(in))[1], 2.0 * std::pow(0.5 * dc, 2), 1e-15);
  in.correction = CorrectionMode::kCalibrated;
  EXPECT_NEAR(Unwrap(CorrectionTerms(in))[0], 2.0 * std::pow(0.5 * dc, 2), 1e-15);
}

TEST(CorrectionTermsTest, NewtonForms) {
  CiInputs in = BaseInputs(Algorithm::kNewtonRaphson);
  const double dc = 0.04 * 2.5;
  // (H + W)^{-1} = diag(4, 2), squared diagonal (16, 4).
  in.correction = CorrectionMode::kVerbatim;
  Eigen::VectorXd c = Unwrap(CorrectionTerms(in));
  EXPECT_NEAR(c[0], 0.25 * 16.0 * dc, 1e-14);
  EXPECT_NEAR(c[1], 0.25 * 4.0 * dc, 1e-14);
  in.correction = CorrectionMode::kCalibrated;
  EXPECT_EQ(Unwrap(CorrectionTerms(in)), c);
  in.correction = CorrectionMode::kSquared;
  c = Unwrap(CorrectionTerms(in));
  EXPECT_NEAR(c[0], 0.25 * 16.0 * dc * dc, 1e-14);
  in.perturbed_hessian = Eigen::MatrixXd::Zero(3, 3);
  EXPECT_EQ(CodeOf(CorrectionTerms(in)), absl::StatusCode::kInvalidArgument);
}

TEST(CorrectedCiTest, CorrectedContainsPlain) {
  for (Algorithm algo :
       {Algorithm::kGradientDescent, Algorithm::kNewtonRaphson}) {
    for (CorrectionMode mode :
         {CorrectionMode::kVerbatim, CorrectionMode::kSquared,
          CorrectionMode::kCalibrated}) {
      CiInputs in = BaseInputs(algo);
      in.correction = mode;
      const CiReport ci = Unwrap(CorrectedCi(in));
      for (int j = 0; j < 2; ++j) {
        EXPECT_LT(ci.plain[j].lo, ci.plain[j].hi);
        EXPECT_LT(ci.corrected[j].lo, ci.plain[j].lo);
        EXPECT_GT(ci.corrected[j].hi, ci.plain[j].hi);
        EXPECT_NEAR(ci.plain[j].hi - in.estimate[j],
                    ci.critical_value * std::sqrt(in.cov(j, j) / 1000.0),
                    1e-15);
        EXPECT_NEAR(in.estimate[j] - ci.corrected[j].lo,
                    ci.critical_value *
                        std::sqrt(in.cov(j, j) / 1000.0 + ci.correction[j]),
                    1e-15);
      }
    }
  }
}

TEST(CorrectedCiTest, ZeroNoiseCollapsesToPlain) {
  for (Algorithm algo :
       {Algorithm::kGradientDescent, Algorithm::kNewtonRaphson}) {
    CiInputs in = BaseInputs(algo);
    in.multiplier = 0.0;
    const CiReport ci = Unwrap(CorrectedCi(in));
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(ci.corrected[j].lo, ci.plain[j].lo);
      EXPECT_EQ(ci.corrected[j].hi, ci.plain[j].hi);
    }
  }
}

TEST(CorrectedCiTest, WidensAsBudgetShrinks) {
  double prev = 0.0;
  for (double eps : {1.9, 1.0, 0.6, 0.2}) {
    OptimizerConfig config;
    config.iterations = 50;
    config.budget = PrivacyBudget::FromHdp(eps);
    CiInputs in = BaseInputs(Algorithm::kGradientDescent);
    in.multiplier = Unwrap(PlanNoise(config)).multiplier;
    const CiReport ci = Unwrap(CorrectedCi(in));
    const double half = ci.corrected[0].hi - ci.estimate[0];
    EXPECT_GT(half, ci.plain[0].hi - ci.estimate[0]);
    EXPECT_GT(half, prev);
    prev = half;
  }
}

TEST(CorrectedCiTest, RejectsInvalidInputs) {
  CiInputs in = BaseInputs(Algorithm::kGradientDescent);
  in.cov = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_EQ(CodeOf(CorrectedCi(in)), absl::StatusCode::kInvalidArgument);
  in = BaseInputs(Algorithm::kGradientDescent);
  in.level = 1.0;
  EXPECT_EQ(CodeOf(CorrectedCi(in)), absl::StatusCode::kInvalidArgument);
  in = BaseInputs(Algorithm::kGradientDescent);
  in.n = 0;
  EXPECT_EQ(CodeOf(CorrectedCi(in)), absl::StatusCode::kInvalidArgument);
}

TEST(CiInputsFromTraceTest, CopiesTraceQuantities) {
  const McLossContext ctx = Context(20, 400);
  OptimizerConfig config;
  config.algorithm = Algorithm::kNewtonRaphson;
  config.iterations = 5;
  config.budget = PrivacyBudget::FromHdp(0.6);
  const IterateTrace trace = Unwrap(RunPrivateOptimizer(
      ctx, config, Theta(5.0, 2.0), RandomStream({20, 1})));
  const Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
  const CiInputs in = CiInputsFromTrace(trace, config, cov, 400, 0.9,
                                        CorrectionMode::kSquared);
  EXPECT_EQ(in.estimate, trace.estimate());
  EXPECT_EQ(in.n, 400u);
  EXPECT_EQ(in.level, 0.9);
  EXPECT_EQ(in.algorithm, Algorithm::kNewtonRaphson);
  EXPECT_EQ(in.multiplier, trace.plan.multiplier);
  EXPECT_EQ(in.gradient_sensitivity, trace.last_gradient_sensitivity);
  EXPECT_EQ(in.perturbed_hessian, trace.last_perturbed_hessian);
  EXPECT_NEAR(in.epsilon_total, 0.6, 1e-10);
}

TEST(ModeNamesTest, RoundTrip) {
  for (CorrectionMode m : {CorrectionMode::kVerbatim, CorrectionMode::kSquared,
                           CorrectionMode::kCalibrated}) {
    EXPECT_EQ(Unwrap(ParseCorrectionMode(CorrectionModeName(m))), m);
  }
  for (CovarianceMode m : {CovarianceMode::kSandwich, CovarianceMode::kPrivate}) {
    EXPECT_EQ(Unwrap(ParseCovarianceMode(CovarianceModeName(m))), m);
  }
  EXPECT_EQ(CodeOf(ParseCorrectionMode("cubic")),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(ParseCovarianceMode("bootstrap")),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace hdp
