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

#include "hdp/optimize.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "Eigen/Eigenvalues"
#include "Eigen/LU"
#include "absl/strings/str_format.h"
#include "hdp/density.h"
#include "hdp/status.h"

namespace hdp {
namespace {

// Reference sample size at which the default constants give K = 50 (GD) and
// K = 5 (NR).
constexpr double kReferenceN = 1000.0;
constexpr double kReferenceKGd = 50.0;
constexpr double kReferenceKNr = 5.0;
constexpr double kIqrToSigma = 1.349;

absl::Status CheckTheta(const McLossContext& ctx,
                        const Eigen::VectorXd& theta) {
  return ctx.model().CheckAdmissible(theta);
}

absl::Status CheckIterate(const Eigen::VectorXd& theta, int k) {
  if (!theta.allFinite()) {
    return NumericalError(
        absl::StrFormat("iterate became non-finite at iteration %d", k + 1));
  }
  return absl::OkStatus();
}

// Budget composed over k steps at eps_per_step, in the units of budget.
absl::StatusOr<double> SpentAfter(const PrivacyBudget& budget,
                                  double eps_per_step, int k) {
  if (k == 0) return 0.0;
  if (budget.is_hdp()) return ComposeHdpK(eps_per_step, k);
  return ComposePdpK(eps_per_step, k, budget.lambda);
}

// Starts a trace at theta0, projected into the admissible region.
absl::StatusOr<IterateTrace> BeginTrace(const McLossContext& ctx,
                                        const Eigen::VectorXd& theta0,
                                        int iterations) {
  if (iterations < 1) {
    return DomainError(
        absl::StrFormat("iterations must be >= 1, got %d", iterations));
  }
  HDP_RETURN_IF_ERROR(CheckTheta(ctx, theta0));
  IterateTrace trace;
  Eigen::VectorXd theta = theta0;
  if (ctx.model().Project(theta)) ++trace.projections;
  trace.thetas.reserve(iterations + 1);
  trace.thetas.push_back(theta);
  return trace;
}

absl::Status FinishTrace(const McLossContext& ctx, IterateTrace& trace) {
  HDP_ASSIGN_OR_RETURN(trace.final_evaluation,
                       ctx.Evaluate(trace.thetas.back(), kLossAll));
  trace.losses.push_back(trace.final_evaluation.loss);
  trace.capped_ratios += trace.final_evaluation.capped;
  return absl::OkStatus();
}

absl::Status CheckLearningRate(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    return DomainError(
        absl::StrFormat("learning rate must be positive, got %g", eta));
  }
  return absl::OkStatus();
}

absl::StatusOr<Eigen::VectorXd> NewtonStep(const Eigen::MatrixXd& h,
                                           const Eigen::VectorXd& g) {
  Eigen::VectorXd step = h.ldlt().solve(g);
  if (!step.allFinite()) {
    return NumericalError("regularized Hessian is singular");
  }
  return step;
}

}  // namespace

absl::StatusOr<Algorithm> ParseAlgorithm(absl::string_view name) {
  if (name == "gd") return Algorithm::kGradientDescent;
  if (name == "nr") return Algorithm::kNewtonRaphson;
  return DomainError(
      absl::StrFormat("unknown algorithm '%s' (expected gd or nr)", name));
}

std::string AlgorithmName(Algorithm algo) {
  return algo == Algorithm::kGradientDescent ? "gd" : "nr";
}

absl::StatusOr<StartMode> ParseStartMode(absl::string_view name) {
  if (name == "fixed") return StartMode::kFixed;
  if (name == "robust") return StartMode::kRobust;
  if (name == "moments") return StartMode::kMoments;
  if (name == "auto") return StartMode::kAuto;
  return DomainError(absl::StrFormat(
      "unknown start mode '%s' (expected fixed, robust, moments or auto)",
      name));
}

std::string StartModeName(StartMode mode) {
  switch (mode) {
    case StartMode::kFixed:
      return "fixed";
    case StartMode::kRobust:
      return "robust";
    case StartMode::kMoments:
      return "moments";
    case StartMode::kAuto:
      return "auto";
  }
  return "auto";
}

absl::Status ValidateOptimizerConfig(const OptimizerConfig& config) {
  if (config.iterations < 1) {
    return DomainError(
        absl::StrFormat("iterations must be >= 1, got %d", config.iterations));
  }
  HDP_RETURN_IF_ERROR(CheckLearningRate(config.learning_rate));
  HDP_RETURN_IF_ERROR(ValidateBudget(config.budget));
  const double p = config.sensitivity_exponent;
  if (!(p > 1.0 && p <= 2.0)) {
    return DomainError(absl::StrFormat(
        "sensitivity exponent p must lie in (1, 2], got %g", p));
  }
  if (config.weak_constant.has_value() &&
      !(*config.weak_constant > 0.0 && std::isfinite(*config.weak_constant))) {
    return DomainError("weak sensitivity constant must be positive");
  }
  if (!(config.hessian_floor > 0.0) || !std::isfinite(config.hessian_floor)) {
    return DomainError("Hessian floor must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> NoiseMultiplier(double eps, double lambda) {
  if (lambda == kHdpLambda) {
    if (eps >= kHdpCeiling) return 0.0;
    return NoiseScaleC(eps);
  }
  const PrivacyBudget budget{lambda, eps};
  if (IsVacuous(budget)) {
    HDP_RETURN_IF_ERROR(ValidateBudget(budget));
    return 0.0;
  }
  HDP_ASSIGN_OR_RETURN(NoiseSpec spec, CalibrateGaussianPdp(1.0, budget));
  return spec.scale;
}

absl::StatusOr<NoisePlan> PlanNoise(const OptimizerConfig& config) {
  HDP_RETURN_IF_ERROR(ValidateOptimizerConfig(config));
  const PrivacyBudget& budget = config.budget;
  const int k = config.iterations;
  NoisePlan plan;
  if (budget.is_hdp()) {
    HDP_ASSIGN_OR_RETURN(plan.eps_per_step,
                         SolvePerStepEpsilon(budget.hdp_epsilon(), k));
  } else {
    HDP_ASSIGN_OR_RETURN(
        plan.eps_per_step,
        SolvePerStepEpsilonPdp(budget.epsilon, k, budget.lambda));
  }
  plan.eps_per_release = plan.eps_per_step;
  if (config.algorithm == Algorithm::kNewtonRaphson) {
    // Two releases per iteration composing exactly to eps_per_step.
    if (budget.is_hdp()) {
      HDP_ASSIGN_OR_RETURN(double pd,
                           SplitPairPdp(2.0 * plan.eps_per_step, kHdpLambda));
      plan.eps_per_release = 0.5 * pd;
    } else {
      HDP_ASSIGN_OR_RETURN(plan.eps_per_release,
                           SplitPairPdp(plan.eps_per_step, budget.lambda));
    }
  }
  HDP_ASSIGN_OR_RETURN(plan.multiplier,
                       NoiseMultiplier(plan.eps_per_release, budget.lambda));
  return plan;
}

absl::StatusOr<Eigen::MatrixXd> SymmetricNoiseMatrix(int m, double scale,
                                                     RandomStream& rng) {
  if (m < 1) return DomainError(absl::StrFormat("dimension must be >= 1, got %d", m));
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    return DomainError(
        absl::StrFormat("noise scale must be non-negative, got %g", scale));
  }
  Eigen::MatrixXd w(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      w(i, j) = scale * rng.StandardNormal();
      w(j, i) = w(i, j);
    }
  }
  return w;
}

absl::StatusOr<Eigen::MatrixXd> RegularizeHessian(const Eigen::MatrixXd& h,
                                                  double floor,
                                                  bool* changed) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    return DomainError("Hessian must be a non-empty square matrix");
  }
  if (!h.allFinite()) return NumericalError("Hessian is not finite");
  if (!(floor > 0.0)) return DomainError("Hessian floor must be positive");
  const Eigen::MatrixXd sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    return NumericalError("Hessian eigendecomposition failed");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();
  if (values.minCoeff() >= floor) {
    if (changed != nullptr) *changed = false;
    return sym;
  }
  if (changed != nullptr) *changed = true;
  const Eigen::VectorXd clipped = values.cwiseMax(floor);
  const Eigen::MatrixXd r =
      eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  // Exactly symmetric; the product is only symmetric up to rounding.
  return Eigen::MatrixXd(0.5 * (r + r.transpose()));
}

absl::StatusOr<Sensitivities> LossSensitivities(const McLossContext& ctx,
                                                const OptimizerConfig& config,
                                                const Eigen::VectorXd& theta) {
  const std::size_t n = ctx.n_data();
  if (config.regime == SensitivityRegime::kSharp) {
    return ctx.model().SharpSensitivities(theta, n,
                                          config.sensitivity_exponent);
  }
  if (config.weak_constant.has_value()) {
    HDP_ASSIGN_OR_RETURN(double rate,
                         WeakSensitivityRate(*config.weak_constant, n));
    return Sensitivities{rate, rate};
  }
  return ctx.model().SharpSensitivities(theta, n, 2.0);
}

absl::StatusOr<IterateTrace> RunGradientDescent(const McLossContext& ctx,
                                                const Eigen::VectorXd& theta0,
                                                int iterations,
                                                double learning_rate) {
  HDP_RETURN_IF_ERROR(CheckLearningRate(learning_rate));
  HDP_ASSIGN_OR_RETURN(IterateTrace trace,
                       BeginTrace(ctx, theta0, iterations));
  Eigen::VectorXd theta = trace.thetas.front();
  for (int k = 0; k < iterations; ++k) {
    HDP_ASSIGN_OR_RETURN(LossEvaluation e,
                         ctx.Evaluate(theta, kLossValue | kLossGradient));
    trace.losses.push_back(e.loss);
    trace.capped_ratios += e.capped;
    theta = theta - learning_rate * e.gradient;
    HDP_RETURN_IF_ERROR(CheckIterate(theta, k));
    if (ctx.model().Project(theta)) ++trace.projections;
    trace.thetas.push_back(theta);
  }
  trace.eps_spent.assign(iterations + 1, 0.0);
  HDP_RETURN_IF_ERROR(FinishTrace(ctx, trace));
  return trace;
}

absl::StatusOr<IterateTrace> RunNewtonRaphson(const McLossContext& ctx,
                                              const Eigen::VectorXd& theta0,
                                              int iterations,
                                              double learning_rate,
                                              double hessian_floor) {
  HDP_RETURN_IF_ERROR(CheckLearningRate(learning_rate));
  HDP_ASSIGN_OR_RETURN(IterateTrace trace,
                       BeginTrace(ctx, theta0, iterations));
  Eigen::VectorXd theta = trace.thetas.front();
  for (int k = 0; k < iterations; ++k) {
    HDP_ASSIGN_OR_RETURN(
        LossEvaluation e,
        ctx.Evaluate(theta, kLossValue | kLossGradient | kLossHessian));
    trace.losses.push_back(e.loss);
    trace.capped_ratios += e.capped;
    bool changed = false;
    HDP_ASSIGN_OR_RETURN(Eigen::MatrixXd h,
                         RegularizeHessian(e.hessian, hessian_floor, &changed));
    if (changed) ++trace.regularizations;
    HDP_ASSIGN_OR_RETURN(Eigen::VectorXd step, NewtonStep(h, e.gradient));
    theta = theta - learning_rate * step;
    HDP_RETURN_IF_ERROR(CheckIterate(theta, k));
    if (ctx.model().Project(theta)) ++trace.projections;
    trace.thetas.push_back(theta);
    trace.last_perturbed_hessian = std::move(h);
  }
  trace.eps_spent.assign(iterations + 1, 0.0);
  HDP_RETURN_IF_ERROR(FinishTrace(ctx, trace));
  return trace;
}

absl::StatusOr<IterateTrace> RunPrivateGradientDescent(
    const McLossContext& ctx, const OptimizerConfig& config,
    const Eigen::VectorXd& theta0, const RandomStream& rng) {
  HDP_ASSIGN_OR_RETURN(NoisePlan plan, PlanNoise(config));
  HDP_ASSIGN_OR_RETURN(IterateTrace trace,
                       BeginTrace(ctx, theta0, config.iterations));
  trace.plan = plan;
  const int m = ctx.model().dim();
  const double eta = config.learning_rate;
  Eigen::VectorXd theta = trace.thetas.front();
  for (int k = 0; k < config.iterations; ++k) {
    HDP_ASSIGN_OR_RETURN(LossEvaluation e,
                         ctx.Evaluate(theta, kLossValue | kLossGradient));
    trace.losses.push_back(e.loss);
    trace.capped_ratios += e.capped;
    HDP_ASSIGN_OR_RETURN(Sensitivities sens,
                         LossSensitivities(ctx, config, theta));
    RandomStream step_rng = rng.Derive(static_cast<std::uint64_t>(k));
    const double sd = sens.gradient * plan.multiplier;
    Eigen::VectorXd noise(m);
    for (int a = 0; a < m; ++a) noise[a] = sd * step_rng.StandardNormal();
    theta = theta - eta * (e.gradient + noise);
    HDP_RETURN_IF_ERROR(CheckIterate(theta, k));
    if (ctx.model().Project(theta)) ++trace.projections;
    trace.thetas.push_back(theta);
    trace.gradient_noise.push_back(std::move(noise));
    trace.last_gradient_sensitivity = sens.gradient;
    trace.last_hessian_sensitivity = sens.hessian;
  }
  for (int k = 0; k <= config.iterations; ++k) {
    HDP_ASSIGN_OR_RETURN(double spent,
                         SpentAfter(config.budget, plan.eps_per_step, k));
    trace.eps_spent.push_back(spent);
  }
  HDP_RETURN_IF_ERROR(FinishTrace(ctx, trace));
  return trace;
}

absl::StatusOr<IterateTrace> RunPrivateNewtonRaphson(
    const McLossContext& ctx, const OptimizerConfig& config,
    const Eigen::VectorXd& theta0, const RandomStream& rng) {
  HDP_ASSIGN_OR_RETURN(NoisePlan plan, PlanNoise(config));
  HDP_ASSIGN_OR_RETURN(IterateTrace trace,
                       BeginTrace(ctx, theta0, config.iterations));
  trace.plan = plan;
  const int m = ctx.model().dim();
  const double eta = config.learning_rate;
  Eigen::VectorXd theta = trace.thetas.front();
  for (int k = 0; k < config.iterations; ++k) {
    HDP_ASSIGN_OR_RETURN(
        LossEvaluation e,
        ctx.Evaluate(theta, kLossValue | kLossGradient | kLossHessian));
    trace.losses.push_back(e.loss);
    trace.capped_ratios += e.capped;
    HDP_ASSIGN_OR_RETURN(Sensitivities sens,
                         LossSensitivities(ctx, config, theta));
    RandomStream step_rng = rng.Derive(static_cast<std::uint64_t>(k));
    const double sd = sens.gradient * plan.multiplier;
    Eigen::VectorXd noise(m);
    for (int a = 0; a < m; ++a) noise[a] = sd * step_rng.StandardNormal();
    HDP_ASSIGN_OR_RETURN(
        Eigen::MatrixXd w,
        SymmetricNoiseMatrix(m, sens.hessian * plan.multiplier, step_rng));
    bool changed = false;
    HDP_ASSIGN_OR_RETURN(
        Eigen::MatrixXd h,
        RegularizeHessian(e.hessian + w, config.hessian_floor, &changed));
    if (changed) ++trace.regularizations;
    HDP_ASSIGN_OR_RETURN(Eigen::VectorXd step,
                         NewtonStep(h, e.gradient + noise));
    theta = theta - eta * step;
    HDP_RETURN_IF_ERROR(CheckIterate(theta, k));
    if (ctx.model().Project(theta)) ++trace.projections;
    trace.thetas.push_back(theta);
    trace.gradient_noise.push_back(std::move(noise));
    trace.hessian_noise.push_back(std::move(w));
    trace.last_perturbed_hessian = std::move(h);
    trace.last_gradient_sensitivity = sens.gradient;
    trace.last_hessian_sensitivity = sens.hessian;
  }
  for (int k = 0; k <= config.iterations; ++k) {
    HDP_ASSIGN_OR_RETURN(double spent,
                         SpentAfter(config.budget, plan.eps_per_step, k));
    trace.eps_spent.push_back(spent);
  }
  HDP_RETURN_IF_ERROR(FinishTrace(ctx, trace));
  return trace;
}

absl::StatusOr<IterateTrace> RunPrivateOptimizer(
    const McLossContext& ctx, const OptimizerConfig& config,
    const Eigen::VectorXd& theta0, const RandomStream& rng) {
  if (config.algorithm == Algorithm::kGradientDescent) {
    return RunPrivateGradientDescent(ctx, config, theta0, rng);
  }
  return RunPrivateNewtonRaphson(ctx, config, theta0, rng);
}

absl::StatusOr<int> AutoIterations(Algorithm algo, std::size_t n,
                                   std::optional<double> constant) {
  if (constant.has_value() && !(*constant > 0.0 && std::isfinite(*constant))) {
    return DomainError("iteration constant must be positive");
  }
  const double log_n = std::log(static_cast<double>(n));
  double scale;
  double c;
  if (algo == Algorithm::kGradientDescent) {
    if (n < 2) return DomainError("automatic K needs n >= 2");
    scale = log_n;
    c = constant.value_or(kReferenceKGd / std::log(kReferenceN));
  } else {
    if (n < 3) return DomainError("automatic K needs n >= 3");
    scale = std::log(log_n);
    c = constant.value_or(kReferenceKNr / std::log(std::log(kReferenceN)));
  }
  // The slack keeps c log n = 50 exactly at the reference size from rounding
  // up to 51.
  return std::max(1, static_cast<int>(std::ceil(c * scale - 1e-9)));
}

absl::StatusOr<Eigen::VectorXd> StartingPoint(StartMode mode, Algorithm algo,
                                              absl::Span<const double> data,
                                              const Eigen::VectorXd& fixed) {
  if (mode == StartMode::kAuto) {
    mode = algo == Algorithm::kGradientDescent ? StartMode::kFixed
                                               : StartMode::kRobust;
  }
  if (mode == StartMode::kFixed) return fixed;
  const std::size_t n = data.size();
  if (n < 2) return DomainError("data-based start needs at least 2 points");
  const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1));
  Eigen::VectorXd theta(2);
  if (mode == StartMode::kMoments) {
    theta << mean, sd;
  } else {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr =
        SortedQuantile(sorted, 0.75) - SortedQuantile(sorted, 0.25);
    theta << SortedQuantile(sorted, 0.5), iqr > 0.0 ? iqr / kIqrToSigma : sd;
  }
  if (!(theta[1] > 0.0)) {
    return DomainError("data-based start undefined for data with zero spread");
  }
  return theta;
}

}  // namespace hdp
