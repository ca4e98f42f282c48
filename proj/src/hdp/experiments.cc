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

#include "hdp/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <thread>

#include "absl/strings/str_format.h"
#include "hdp/density.h"
#include "hdp/hd_loss.h"
#include "hdp/models.h"
#include "hdp/special_functions.h"
#include "hdp/status.h"

namespace hdp {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t Purpose(StreamPurpose p) { return static_cast<std::uint64_t>(p); }

Eigen::VectorXd TrueTheta(const SimulationConfig& c) {
  Eigen::VectorXd theta(2);
  theta << c.true_mu, c.true_sigma;
  return theta;
}

// Replication failures are numerical aborts; every other error is a caller
// or configuration error and propagates.
bool IsReplicationFailure(const absl::Status& s) {
  return s.code() == absl::StatusCode::kAborted;
}

// Budget argument of the covariance release for one grid entry.
double CovarianceEpsilon(double epsilon, double lambda) {
  const PrivacyBudget budget = BudgetForEpsilon(epsilon, lambda);
  return budget.is_hdp() ? budget.hdp_epsilon() : budget.epsilon;
}

struct Covariance {
  Eigen::MatrixXd cov;
  double epsilon_loose = 0.0;
  double epsilon_exact = 0.0;
};

absl::StatusOr<Covariance> ReleaseCovariance(const McLossContext& ctx,
                                             const OptimizerConfig& opt,
                                             const IterateTrace& trace,
                                             CovarianceMode mode,
                                             double epsilon,
                                             RandomStream& rng) {
  Covariance out;
  const LossEvaluation& e = trace.final_evaluation;
  const double spent = trace.eps_spent.back();
  if (mode == CovarianceMode::kSandwich) {
    HDP_ASSIGN_OR_RETURN(out.cov,
                         AssembleSandwich(e.hessian, e.meat, opt.hessian_floor));
    out.epsilon_loose = spent;
    out.epsilon_exact = spent;
    return out;
  }
  HDP_ASSIGN_OR_RETURN(Sensitivities sens,
                       LossSensitivities(ctx, opt, trace.estimate()));
  HDP_ASSIGN_OR_RETURN(
      PrivateCovRelease release,
      PrivateCovFromEvaluation(e, sens.hessian,
                               CovarianceEpsilon(epsilon, opt.budget.lambda),
                               opt.budget.lambda, rng, opt.hessian_floor));
  out.cov = std::move(release.cov);
  out.epsilon_loose = release.epsilon_total_loose;
  out.epsilon_exact = release.epsilon_total;
  return out;
}

absl::StatusOr<McLossContext> BuildContext(
    absl::Span<const double> data, double bandwidth,
    const std::optional<double>& truncation, int mc_multiplier,
    double sigma_min, RandomStream& rng) {
  HDP_ASSIGN_OR_RETURN(
      KdeEstimate kde,
      KdeEstimate::Create(std::vector<double>(data.begin(), data.end()),
                          bandwidth, truncation));
  auto model = std::make_shared<NormalModel>(sigma_min);
  return McLossContext::Create(kde, std::move(model),
                               static_cast<std::size_t>(mc_multiplier) *
                                   data.size(),
                               rng);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> MeanAndSe(
    const std::vector<const Eigen::VectorXd*>& xs, int m) {
  Eigen::VectorXd mean = Eigen::VectorXd::Constant(m, kNan);
  Eigen::VectorXd se = Eigen::VectorXd::Constant(m, kNan);
  if (xs.empty()) return {mean, se};
  mean.setZero();
  for (const Eigen::VectorXd* x : xs) mean += *x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, se};
  se.setZero();
  for (const Eigen::VectorXd* x : xs) {
    se += (*x - mean).cwiseAbs2();
  }
  se = (se / static_cast<double>(xs.size() - 1)).cwiseSqrt();
  return {mean, se};
}

Eigen::VectorXd CoverageRate(const std::vector<const std::vector<bool>*>& flags,
                             int m) {
  Eigen::VectorXd out = Eigen::VectorXd::Constant(m, kNan);
  if (flags.empty()) return out;
  out.setZero();
  for (const std::vector<bool>* f : flags) {
    for (int j = 0; j < m; ++j) out[j] += (*f)[j] ? 1.0 : 0.0;
  }
  return out / static_cast<double>(flags.size());
}

struct ReplicationResult {
  std::vector<ReplicationOutcome> outcomes;
  std::optional<MleOutcome> mle;
};

struct Job {
  std::size_t n;
  std::size_t alpha_index;
  int rep;
  double bandwidth;
};

absl::StatusOr<std::vector<double>> ReplicationData(const SimulationConfig& c,
                                                    std::size_t n,
                                                    std::size_t alpha_index,
                                                    int rep) {
  RandomStream rng({c.seed, n, alpha_index, static_cast<std::uint64_t>(rep),
                    Purpose(StreamPurpose::kData)});
  return GenerateContaminated(n, c.true_mu, c.true_sigma,
                              c.alpha_grid[alpha_index], c.contamination_lo,
                              c.contamination_hi, rng);
}

std::vector<bool> Covers(const std::vector<Interval>& intervals,
                         const Eigen::VectorXd& truth) {
  std::vector<bool> out;
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    out.push_back(intervals[j].Contains(truth[j]));
  }
  return out;
}

absl::StatusOr<ReplicationResult> RunReplication(const SimulationConfig& c,
                                                 const Job& job) {
  const std::size_t n = job.n;
  const double alpha = c.alpha_grid[job.alpha_index];
  const std::uint64_t rep = static_cast<std::uint64_t>(job.rep);
  const Eigen::VectorXd truth = TrueTheta(c);
  ReplicationResult result;

  HDP_ASSIGN_OR_RETURN(std::vector<double> data,
                       ReplicationData(c, n, job.alpha_index, job.rep));
  if (c.include_mle) {
    MleOutcome mle;
    mle.n = n;
    mle.alpha = alpha;
    mle.rep = job.rep;
    auto est = MleEstimate(data);
    if (est.ok()) {
      mle.estimate = *est;
      const double z = TwoSidedCriticalValue(c.level).value();
      const double sd = (*est)[1];
      const double half[2] = {z * sd / std::sqrt(static_cast<double>(n)),
                              z * sd / std::sqrt(2.0 * n)};
      for (int j = 0; j < 2; ++j) {
        mle.covered.push_back(std::abs((*est)[j] - truth[j]) <= half[j]);
      }
    } else {
      mle.failed = true;
    }
    result.mle = std::move(mle);
  }

  auto fail_all = [&](const absl::Status& s) {
    for (double eps : c.epsilon_grid) {
      ReplicationOutcome o;
      o.n = n;
      o.alpha = alpha;
      o.epsilon = eps;
      o.rep = job.rep;
      o.failed = true;
      o.failure = std::string(s.message());
      result.outcomes.push_back(std::move(o));
    }
    return result;
  };

  double bandwidth = job.bandwidth;
  if (c.bandwidth == BandwidthMode::kPerReplication) {
    auto bw = SilvermanBandwidth(data);
    if (!bw.ok()) return fail_all(bw.status());
    bandwidth = *bw;
  }
  RandomStream mc_rng({c.seed, n, job.alpha_index, rep,
                       Purpose(StreamPurpose::kMonteCarlo)});
  auto ctx_or = BuildContext(data, bandwidth, c.truncation, c.mc_multiplier,
                             c.sigma_min, mc_rng);
  if (!ctx_or.ok()) {
    if (IsReplicationFailure(ctx_or.status())) return fail_all(ctx_or.status());
    return ctx_or.status();
  }
  const McLossContext& ctx = *ctx_or;

  Eigen::VectorXd fixed(2);
  fixed << c.start_mu, c.start_sigma;
  auto theta0_or = StartingPoint(c.start, c.algorithm, data, fixed);
  if (!theta0_or.ok()) return fail_all(theta0_or.status());
  const Eigen::VectorXd theta0 = *theta0_or;
  int k;
  if (c.iterations.has_value()) {
    k = *c.iterations;
  } else {
    HDP_ASSIGN_OR_RETURN(k, AutoIterations(c.algorithm, n, c.k_constant));
  }

  Eigen::VectorXd reference;
  if (c.threshold) {
    auto ref = c.algorithm == Algorithm::kGradientDescent
                   ? RunGradientDescent(ctx, theta0, k, c.learning_rate)
                   : RunNewtonRaphson(ctx, theta0, k, c.learning_rate,
                                      c.hessian_floor);
    if (ref.ok()) {
      reference = ref->estimate();
    } else if (!IsReplicationFailure(ref.status())) {
      return ref.status();
    }
  }

  for (double eps : c.epsilon_grid) {
    ReplicationOutcome o;
    o.n = n;
    o.alpha = alpha;
    o.epsilon = eps;
    o.rep = job.rep;
    o.reference = reference;

    OptimizerConfig opt;
    opt.algorithm = c.algorithm;
    opt.iterations = k;
    opt.learning_rate = c.learning_rate;
    opt.budget = BudgetForEpsilon(eps, c.lambda);
    opt.sensitivity_exponent = c.sensitivity_exponent;
    opt.regime = c.regime;
    opt.weak_constant = c.weak_constant;
    opt.hessian_floor = c.hessian_floor;

    const RandomStream opt_rng({c.seed, n, job.alpha_index, rep,
                                Purpose(StreamPurpose::kOptimizerNoise)});
    RandomStream cov_rng({c.seed, n, job.alpha_index, rep,
                          Purpose(StreamPurpose::kCovarianceNoise)});
    absl::Status status = [&]() -> absl::Status {
      HDP_ASSIGN_OR_RETURN(IterateTrace trace,
                           RunPrivateOptimizer(ctx, opt, theta0, opt_rng));
      HDP_ASSIGN_OR_RETURN(
          Covariance cov,
          ReleaseCovariance(ctx, opt, trace, c.cov_mode, eps, cov_rng));
      const CiInputs in =
          CiInputsFromTrace(trace, opt, cov.cov, n, c.level, c.correction);
      HDP_ASSIGN_OR_RETURN(CiReport ci, CorrectedCi(in));
      o.estimate = trace.estimate();
      o.plain = ci.plain;
      o.corrected = ci.corrected;
      o.covered = Covers(ci.plain, truth);
      o.covered_corrected = Covers(ci.corrected, truth);
      o.epsilon_spent = trace.eps_spent.back();
      o.projections = trace.projections;
      o.capped_ratios = trace.capped_ratios;
      if (job.rep < c.trace_reps) o.trace = std::move(trace);
      return absl::OkStatus();
    }();
    if (!status.ok()) {
      if (!IsReplicationFailure(status)) return status;
      o.failed = true;
      o.failure = std::string(status.message());
    }
    result.outcomes.push_back(std::move(o));
  }
  return result;
}

template <typename Fn>
void RunParallel(std::size_t count, int threads, Fn fn) {
  std::size_t workers = threads > 0
                            ? static_cast<std::size_t>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

absl::Status ValidateEstimateOptions(const EstimateOptions& o) {
  if (o.iterations.has_value() && *o.iterations < 1) {
    return DomainError("K must be >= 1");
  }
  if (o.lambda == kHdpLambda && !(o.epsilon > 0.0 && o.epsilon <= kHdpCeiling) &&
      !std::isinf(o.epsilon)) {
    return DomainError(
        absl::StrFormat("HDP epsilon must lie in (0, 2], got %g", o.epsilon));
  }
  HDP_RETURN_IF_ERROR(ValidateBudget(BudgetForEpsilon(o.epsilon, o.lambda)));
  if (o.mc_multiplier < 1) return DomainError("mc_multiplier must be >= 1");
  if (o.bandwidth.has_value() && !(*o.bandwidth > 0.0)) {
    return DomainError("bandwidth must be positive");
  }
  if (o.truncation.has_value() && !(*o.truncation > 0.0)) {
    return DomainError("truncation must be positive");
  }
  if (!(o.level > 0.0 && o.level < 1.0)) {
    return DomainError("level must lie in (0, 1)");
  }
  if (!(o.sigma_min > 0.0)) return DomainError("sigma_min must be positive");
  if (!(o.start_sigma > 0.0)) return DomainError("start_sigma must be positive");
  return absl::OkStatus();
}

absl::StatusOr<OptimizerConfig> MakeOptimizerConfig(
    const EstimateOptions& options, std::size_t n) {
  HDP_RETURN_IF_ERROR(ValidateEstimateOptions(options));
  OptimizerConfig opt;
  opt.algorithm = options.algorithm;
  if (options.iterations.has_value()) {
    opt.iterations = *options.iterations;
  } else {
    HDP_ASSIGN_OR_RETURN(opt.iterations, AutoIterations(options.algorithm, n,
                                                        options.k_constant));
  }
  opt.learning_rate = options.learning_rate;
  opt.budget = BudgetForEpsilon(options.epsilon, options.lambda);
  opt.sensitivity_exponent = options.sensitivity_exponent;
  opt.regime = options.regime;
  opt.weak_constant = options.weak_constant;
  opt.hessian_floor = options.hessian_floor;
  HDP_RETURN_IF_ERROR(ValidateOptimizerConfig(opt));
  return opt;
}

absl::StatusOr<EstimateReport> EstimateFromData(absl::Span<const double> data,
                                                const EstimateOptions& options) {
  if (data.size() < 2) return DomainError("estimation needs at least 2 points");
  EstimateReport report;
  HDP_ASSIGN_OR_RETURN(report.optimizer, MakeOptimizerConfig(options, data.size()));
  if (options.bandwidth.has_value()) {
    report.bandwidth = *options.bandwidth;
  } else {
    HDP_ASSIGN_OR_RETURN(report.bandwidth, SilvermanBandwidth(data));
  }
  RandomStream mc_rng({options.seed, Purpose(StreamPurpose::kMonteCarlo)});
  HDP_ASSIGN_OR_RETURN(
      McLossContext ctx,
      BuildContext(data, report.bandwidth, options.truncation,
                   options.mc_multiplier, options.sigma_min, mc_rng));
  report.mc_samples = ctx.r();
  Eigen::VectorXd fixed(2);
  fixed << options.start_mu, options.start_sigma;
  HDP_ASSIGN_OR_RETURN(Eigen::VectorXd theta0,
                       StartingPoint(options.start, options.algorithm, data,
                                     fixed));
  const RandomStream opt_rng(
      {options.seed, Purpose(StreamPurpose::kOptimizerNoise)});
  HDP_ASSIGN_OR_RETURN(report.trace, RunPrivateOptimizer(ctx, report.optimizer,
                                                         theta0, opt_rng));
  RandomStream cov_rng({options.seed, Purpose(StreamPurpose::kCovarianceNoise)});
  HDP_ASSIGN_OR_RETURN(
      Covariance cov,
      ReleaseCovariance(ctx, report.optimizer, report.trace, options.cov_mode,
                        options.epsilon, cov_rng));
  const CiInputs in = CiInputsFromTrace(report.trace, report.optimizer, cov.cov,
                                        data.size(), options.level,
                                        options.correction);
  HDP_ASSIGN_OR_RETURN(report.ci, CorrectedCi(in));
  report.epsilon_estimate = report.trace.eps_spent.back();
  report.epsilon_with_cov_loose = cov.epsilon_loose;
  report.epsilon_with_cov = cov.epsilon_exact;
  return report;
}

absl::StatusOr<CiReport> CiForEstimate(absl::Span<const double> data,
                                       const Eigen::VectorXd& theta,
                                       const EstimateOptions& options) {
  if (data.size() < 2) return DomainError("intervals need at least 2 points");
  HDP_ASSIGN_OR_RETURN(OptimizerConfig opt,
                       MakeOptimizerConfig(options, data.size()));
  double bandwidth;
  if (options.bandwidth.has_value()) {
    bandwidth = *options.bandwidth;
  } else {
    HDP_ASSIGN_OR_RETURN(bandwidth, SilvermanBandwidth(data));
  }
  RandomStream mc_rng({options.seed, Purpose(StreamPurpose::kMonteCarlo)});
  HDP_ASSIGN_OR_RETURN(
      McLossContext ctx,
      BuildContext(data, bandwidth, options.truncation, options.mc_multiplier,
                   options.sigma_min, mc_rng));
  HDP_RETURN_IF_ERROR(ctx.model().CheckAdmissible(theta));
  HDP_ASSIGN_OR_RETURN(NoisePlan plan, PlanNoise(opt));
  IterateTrace trace;
  trace.thetas.push_back(theta);
  trace.plan = plan;
  HDP_ASSIGN_OR_RETURN(trace.final_evaluation, ctx.Evaluate(theta, kLossAll));
  HDP_ASSIGN_OR_RETURN(Sensitivities sens, LossSensitivities(ctx, opt, theta));
  trace.last_gradient_sensitivity = sens.gradient;
  trace.last_hessian_sensitivity = sens.hessian;
  HDP_ASSIGN_OR_RETURN(trace.last_perturbed_hessian,
                       RegularizeHessian(trace.final_evaluation.hessian,
                                         opt.hessian_floor));
  HDP_ASSIGN_OR_RETURN(double spent,
                       opt.budget.is_hdp()
                           ? ComposeHdpK(plan.eps_per_step, opt.iterations)
                           : ComposePdpK(plan.eps_per_step, opt.iterations,
                                         opt.budget.lambda));
  trace.eps_spent.push_back(spent);
  RandomStream cov_rng({options.seed, Purpose(StreamPurpose::kCovarianceNoise)});
  HDP_ASSIGN_OR_RETURN(Covariance cov,
                       ReleaseCovariance(ctx, opt, trace, options.cov_mode,
                                         options.epsilon, cov_rng));
  const CiInputs in = CiInputsFromTrace(trace, opt, cov.cov, data.size(),
                                        options.level, options.correction);
  HDP_ASSIGN_OR_RETURN(CiReport report, CorrectedCi(in));
  report.epsilon_total = cov.epsilon_exact;
  return report;
}

absl::StatusOr<std::vector<double>> GenerateContaminated(
    std::size_t n, double mu, double sigma, double alpha, double lo, double hi,
    RandomStream& rng) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    return DomainError("normal component needs finite mu and sigma > 0");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return DomainError(
        absl::StrFormat("contamination fraction must lie in [0, 1], got %g",
                        alpha));
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    return DomainError("contamination interval needs finite lo < hi");
  }
  std::vector<double> out(n);
  for (double& x : out) {
    // Drawing the selector first keeps the pure-normal stream unchanged
    // when alpha = 0.
    const bool outlier = alpha > 0.0 && rng.Uniform() < alpha;
    x = outlier ? rng.Uniform(lo, hi) : mu + sigma * rng.StandardNormal();
  }
  return out;
}

absl::StatusOr<Eigen::VectorXd> MleEstimate(absl::Span<const double> data) {
  const std::size_t n = data.size();
  if (n < 2) return DomainError("MLE needs at least 2 points");
  const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) return NumericalError("MLE undefined for constant data");
  Eigen::VectorXd theta(2);
  theta << mean, sd;
  return theta;
}

absl::StatusOr<std::vector<bool>> ThresholdEstimates(
    absl::Span<const Eigen::VectorXd> estimates,
    absl::Span<const Eigen::VectorXd> references, double lo, double hi) {
  if (estimates.size() != references.size()) {
    return DomainError("estimates and references differ in length");
  }
  if (!(lo > 0.0 && lo < hi && hi < 1.0)) {
    return DomainError("threshold quantiles need 0 < lo < hi < 1");
  }
  HDP_ASSIGN_OR_RETURN(double z_lo, NormalQuantile(lo));
  HDP_ASSIGN_OR_RETURN(double z_hi, NormalQuantile(hi));
  std::vector<bool> keep(estimates.size(), true);
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const Eigen::VectorXd& ref = references[i];
    if (ref.size() < 2 || estimates[i].size() < 1) continue;
    const double mu = estimates[i][0];
    keep[i] = mu >= ref[0] + ref[1] * z_lo && mu <= ref[0] + ref[1] * z_hi;
  }
  return keep;
}

std::vector<std::size_t> SimulationSizes(const SimulationConfig& config) {
  std::vector<std::size_t> sizes = config.n_grid;
  sizes.push_back(config.n);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

absl::StatusOr<SimulationResult> RunSimulation(const SimulationConfig& config) {
  HDP_RETURN_IF_ERROR(ValidateSimulationConfig(config));
  SimulationResult result;
  result.config = config;
  result.sizes = SimulationSizes(config);
  if (config.reps == 0) return result;

  const std::size_t n_alpha = config.alpha_grid.size();
  std::vector<Job> jobs;
  for (std::size_t n : result.sizes) {
    for (std::size_t a = 0; a < n_alpha; ++a) {
      double bandwidth = config.bandwidth_value;
      if (config.bandwidth == BandwidthMode::kAuto) {
        HDP_ASSIGN_OR_RETURN(std::vector<double> first,
                             ReplicationData(config, n, a, 0));
        HDP_ASSIGN_OR_RETURN(bandwidth, SilvermanBandwidth(first));
      }
      result.bandwidths.push_back(bandwidth);
      for (int rep = 0; rep < config.reps; ++rep) {
        jobs.push_back({n, a, rep, bandwidth});
      }
    }
  }

  std::vector<absl::Status> statuses(jobs.size());
  std::vector<ReplicationResult> outcomes(jobs.size());
  RunParallel(jobs.size(), config.threads, [&](std::size_t i) {
    auto r = RunReplication(config, jobs[i]);
    if (r.ok()) {
      outcomes[i] = *std::move(r);
    } else {
      statuses[i] = r.status();
    }
  });
  for (const absl::Status& s : statuses) HDP_RETURN_IF_ERROR(s);

  const std::size_t n_eps = config.epsilon_grid.size();
  const int m = 2;
  const Eigen::VectorXd no_ref;
  for (std::size_t block = 0; block < result.sizes.size() * n_alpha; ++block) {
    const std::size_t first = block * config.reps;
    for (std::size_t e = 0; e < n_eps; ++e) {
      std::vector<ReplicationOutcome*> cell;
      for (int rep = 0; rep < config.reps; ++rep) {
        cell.push_back(&outcomes[first + rep].outcomes[e]);
      }
      // Threshold against each replication's non-private estimate.
      std::vector<Eigen::VectorXd> est;
      std::vector<Eigen::VectorXd> ref;
      std::vector<ReplicationOutcome*> ok;
      for (ReplicationOutcome* o : cell) {
        if (o->failed) continue;
        ok.push_back(o);
        est.push_back(o->estimate);
        ref.push_back(config.threshold ? o->reference : no_ref);
      }
      HDP_ASSIGN_OR_RETURN(
          std::vector<bool> keep,
          ThresholdEstimates(est, ref, config.threshold_lo,
                             config.threshold_hi));
      CellSummary s;
      s.n = cell.front()->n;
      s.alpha = cell.front()->alpha;
      s.epsilon = cell.front()->epsilon;
      s.reps = config.reps;
      s.n_failed = static_cast<int>(cell.size() - ok.size());
      std::vector<const Eigen::VectorXd*> all_est;
      std::vector<const Eigen::VectorXd*> kept_est;
      std::vector<const std::vector<bool>*> cov_c, cov_u, cov_c_kept, cov_u_kept;
      for (std::size_t i = 0; i < ok.size(); ++i) {
        ok[i]->dropped = !keep[i];
        all_est.push_back(&ok[i]->estimate);
        cov_c.push_back(&ok[i]->covered_corrected);
        cov_u.push_back(&ok[i]->covered);
        if (keep[i]) {
          kept_est.push_back(&ok[i]->estimate);
          cov_c_kept.push_back(&ok[i]->covered_corrected);
          cov_u_kept.push_back(&ok[i]->covered);
        } else {
          ++s.n_thresholded;
        }
      }
      std::tie(s.mean, s.se) = MeanAndSe(kept_est, m);
      std::tie(s.mean_all, s.se_all) = MeanAndSe(all_est, m);
      s.coverage_corrected = CoverageRate(cov_c, m);
      s.coverage_uncorrected = CoverageRate(cov_u, m);
      s.coverage_corrected_kept = CoverageRate(cov_c_kept, m);
      s.coverage_uncorrected_kept = CoverageRate(cov_u_kept, m);
      result.cells.push_back(std::move(s));
    }
    if (config.include_mle) {
      MleSummary s;
      std::vector<const Eigen::VectorXd*> est;
      std::vector<const std::vector<bool>*> cov;
      for (int rep = 0; rep < config.reps; ++rep) {
        const MleOutcome& o = *outcomes[first + rep].mle;
        s.n = o.n;
        s.alpha = o.alpha;
        if (o.failed) {
          ++s.n_failed;
          continue;
        }
        est.push_back(&o.estimate);
        cov.push_back(&o.covered);
      }
      s.reps = config.reps;
      std::tie(s.mean, s.se) = MeanAndSe(est, m);
      s.coverage = CoverageRate(cov, m);
      result.mle.push_back(std::move(s));
    }
  }
  for (ReplicationResult& r : outcomes) {
    for (ReplicationOutcome& o : r.outcomes) {
      result.replications.push_back(std::move(o));
    }
    if (r.mle.has_value()) result.mle_replications.push_back(*std::move(r.mle));
  }
  return result;
}

}  // namespace hdp
