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

// extern "C" surface over the C++ core. No exception or absl type crosses
// this boundary.

#include "hdp/hdp.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hdp/config.h"
#include "hdp/csv_output.h"
#include "hdp/density.h"
#include "hdp/divergence.h"
#include "hdp/experiments.h"
#include "hdp/hd_loss.h"
#include "hdp/privacy.h"

struct hdp_dataset {
  std::vector<double> values;
};

struct hdp_estimate_result {
  hdp::EstimateReport report;
};

struct hdp_sim_config {
  hdp::SimulationConfig config;
};

struct hdp_sim_result {
  hdp::SimulationResult result;
};

namespace {

thread_local std::string last_error;

hdp_status ToCode(absl::StatusCode code) {
  switch (code) {
    case absl::StatusCode::kOk:
      return HDP_OK;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return HDP_ERR_INVALID_ARGUMENT;
    case absl::StatusCode::kUnimplemented:
      return HDP_ERR_UNSUPPORTED;
    case absl::StatusCode::kAborted:
      return HDP_ERR_NUMERICAL;
    case absl::StatusCode::kNotFound:
      return HDP_ERR_IO;
    default:
      return HDP_ERR_INTERNAL;
  }
}

hdp_status Fail(hdp_status code, std::string message) {
  last_error = std::move(message);
  return code;
}

hdp_status Report(const absl::Status& s) {
  if (s.ok()) return HDP_OK;
  return Fail(ToCode(s.code()), std::string(s.message()));
}

hdp_status NullArgument(const char* name) {
  return Fail(HDP_ERR_INVALID_ARGUMENT,
              std::string("argument '") + name + "' must not be NULL");
}

// Runs fn, converting escaped exceptions into HDP_ERR_INTERNAL.
template <typename Fn>
hdp_status Guard(Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return Fail(HDP_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(HDP_ERR_INTERNAL, "unknown exception");
  }
}

hdp_status ScalarResult(const absl::StatusOr<double>& r, double* out) {
  if (out == nullptr) return NullArgument("out");
  if (!r.ok()) return Report(r.status());
  *out = *r;
  return HDP_OK;
}

hdp_status SpecResult(const absl::StatusOr<hdp::NoiseSpec>& r,
                      hdp_noise_spec* out) {
  if (out == nullptr) return NullArgument("out");
  if (!r.ok()) return Report(r.status());
  out->kind = r->kind == hdp::NoiseKind::kGaussian ? HDP_NOISE_GAUSSIAN
                                                   : HDP_NOISE_LAPLACE;
  out->scale = r->scale;
  out->variance = r->variance();
  out->sensitivity = r->sensitivity;
  out->dim = r->dim;
  return HDP_OK;
}

hdp_status CopyText(const std::string& text, char* buffer, size_t capacity,
                    size_t* needed) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (buffer == nullptr || capacity < text.size() + 1) {
    return Fail(HDP_ERR_INVALID_ARGUMENT, "buffer too small");
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return HDP_OK;
}

absl::StatusOr<hdp::EstimateOptions> ConvertOptions(
    const hdp_estimate_options* o) {
  hdp::EstimateOptions out;
  switch (o->algorithm) {
    case HDP_ALGO_GD:
      out.algorithm = hdp::Algorithm::kGradientDescent;
      break;
    case HDP_ALGO_NR:
      out.algorithm = hdp::Algorithm::kNewtonRaphson;
      break;
    default:
      return absl::InvalidArgumentError("unknown algorithm");
  }
  if (o->iterations < 0) return absl::InvalidArgumentError("iterations < 0");
  if (o->iterations > 0) out.iterations = o->iterations;
  if (o->k_constant > 0.0) out.k_constant = o->k_constant;
  out.learning_rate = o->learning_rate;
  out.epsilon = o->epsilon;
  out.lambda = o->lambda;
  out.sensitivity_exponent = o->sensitivity_exponent;
  out.regime = o->weak_sensitivity ? hdp::SensitivityRegime::kWeak
                                   : hdp::SensitivityRegime::kSharp;
  if (o->weak_constant > 0.0) out.weak_constant = o->weak_constant;
  out.hessian_floor = o->hessian_floor;
  out.sigma_min = o->sigma_min;
  out.seed = o->seed;
  out.mc_multiplier = o->mc_multiplier;
  if (o->bandwidth > 0.0) out.bandwidth = o->bandwidth;
  if (o->truncation > 0.0) out.truncation = o->truncation;
  out.level = o->level;
  switch (o->correction) {
    case HDP_CORRECTION_VERBATIM:
      out.correction = hdp::CorrectionMode::kVerbatim;
      break;
    case HDP_CORRECTION_SQUARED:
      out.correction = hdp::CorrectionMode::kSquared;
      break;
    case HDP_CORRECTION_CALIBRATED:
      out.correction = hdp::CorrectionMode::kCalibrated;
      break;
    default:
      return absl::InvalidArgumentError("unknown correction mode");
  }
  switch (o->cov_mode) {
    case HDP_COV_SANDWICH:
      out.cov_mode = hdp::CovarianceMode::kSandwich;
      break;
    case HDP_COV_PRIVATE:
      out.cov_mode = hdp::CovarianceMode::kPrivate;
      break;
    default:
      return absl::InvalidArgumentError("unknown covariance mode");
  }
  switch (o->start) {
    case HDP_START_FIXED:
      out.start = hdp::StartMode::kFixed;
      break;
    case HDP_START_ROBUST:
      out.start = hdp::StartMode::kRobust;
      break;
    case HDP_START_MOMENTS:
      out.start = hdp::StartMode::kMoments;
      break;
    case HDP_START_AUTO:
      out.start = hdp::StartMode::kAuto;
      break;
    default:
      return absl::InvalidArgumentError("unknown start mode");
  }
  out.start_mu = o->start_mu;
  out.start_sigma = o->start_sigma;
  const absl::Status s = hdp::ValidateEstimateOptions(out);
  if (!s.ok()) return s;
  return out;
}

void FillCi(const hdp::CiReport& ci, hdp_ci_report* out) {
  for (int j = 0; j < 2; ++j) {
    out->estimate[j] = ci.estimate[j];
    out->plain_lo[j] = ci.plain[j].lo;
    out->plain_hi[j] = ci.plain[j].hi;
    out->corrected_lo[j] = ci.corrected[j].lo;
    out->corrected_hi[j] = ci.corrected[j].hi;
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out->cov[2 * a + b] = ci.cov(a, b);
  }
  out->level = ci.level;
  out->critical_value = ci.critical_value;
  out->epsilon_total = ci.epsilon_total;
}

void CopyPair(const Eigen::VectorXd& v, double out[2]) {
  for (int j = 0; j < 2; ++j) {
    out[j] = j < v.size() ? v[j] : std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

extern "C" {

const char* hdp_last_error(void) { return last_error.c_str(); }

const char* hdp_status_name(hdp_status status) {
  switch (status) {
    case HDP_OK:
      return "ok";
    case HDP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case HDP_ERR_UNSUPPORTED:
      return "unsupported";
    case HDP_ERR_NUMERICAL:
      return "numerical failure";
    case HDP_ERR_IO:
      return "i/o error";
    case HDP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* hdp_version(void) { return "1.0.0"; }

hdp_status hdp_gaussian_power_divergence(double v_norm, double sigma,
                                         double lambda, double* out) {
  return Guard([&] {
    return ScalarResult(hdp::GaussianPowerDivergence(v_norm, sigma, lambda),
                        out);
  });
}

hdp_status hdp_hellinger_sq_gaussians(double v_norm, double sigma,
                                      double* out) {
  return Guard(
      [&] { return ScalarResult(hdp::HellingerSqGaussians(v_norm, sigma), out); });
}

hdp_status hdp_laplace_power_divergence_exact(const double* v, size_t dim,
                                              double b, double lambda,
                                              double* out) {
  return Guard([&] {
    if (v == nullptr && dim > 0) return NullArgument("v");
    return ScalarResult(hdp::LaplacePowerDivergenceExact(
                            absl::MakeConstSpan(v, dim), b, lambda),
                        out);
  });
}

hdp_status hdp_laplace_power_divergence_bound(double v_l1, double b,
                                              double lambda, double* out) {
  return Guard([&] {
    return ScalarResult(hdp::LaplacePowerDivergenceBound(v_l1, b, lambda), out);
  });
}

hdp_status hdp_calibrate_gaussian_pdp(double sensitivity, double lambda,
                                      double epsilon, int dim,
                                      hdp_noise_spec* out) {
  return Guard([&] {
    return SpecResult(hdp::CalibrateGaussianPdp(
                          sensitivity, hdp::PrivacyBudget{lambda, epsilon}, dim),
                      out);
  });
}

hdp_status hdp_calibrate_gaussian_hdp(double sensitivity, double epsilon,
                                      int dim, hdp_noise_spec* out) {
  return Guard([&] {
    return SpecResult(hdp::CalibrateGaussianHdp(sensitivity, epsilon, dim), out);
  });
}

hdp_status hdp_calibrate_laplace_pdp(double sensitivity, double lambda,
                                     double epsilon, int dim,
                                     hdp_noise_spec* out) {
  return Guard([&] {
    return SpecResult(hdp::CalibrateLaplacePdp(
                          sensitivity, hdp::PrivacyBudget{lambda, epsilon}, dim),
                      out);
  });
}

hdp_status hdp_calibrate_laplace_hdp_exact_1d(double sensitivity,
                                              double epsilon,
                                              hdp_noise_spec* out) {
  return Guard([&] {
    return SpecResult(hdp::CalibrateLaplaceHdpExact1d(sensitivity, epsilon),
                      out);
  });
}

hdp_status hdp_noise_scale_c(double epsilon, double* out) {
  return Guard([&] { return ScalarResult(hdp::NoiseScaleC(epsilon), out); });
}

hdp_status hdp_compose_pdp(double e1, double e2, double lambda, double* out) {
  return Guard(
      [&] { return ScalarResult(hdp::ComposePdp(e1, e2, lambda), out); });
}

hdp_status hdp_compose_hdp(double e1, double e2, double* out) {
  return Guard([&] { return ScalarResult(hdp::ComposeHdp(e1, e2), out); });
}

hdp_status hdp_compose_hdp_k(double eps_per_step, int k, double* out) {
  return Guard(
      [&] { return ScalarResult(hdp::ComposeHdpK(eps_per_step, k), out); });
}

hdp_status hdp_compose_pdp_k(double eps_per_step, int k, double lambda,
                             double* out) {
  return Guard([&] {
    return ScalarResult(hdp::ComposePdpK(eps_per_step, k, lambda), out);
  });
}

hdp_status hdp_solve_per_step_epsilon(double eps_total, int k, double* out) {
  return Guard([&] {
    return ScalarResult(hdp::SolvePerStepEpsilon(eps_total, k), out);
  });
}

hdp_status hdp_solve_per_step_epsilon_pdp(double eps_total, int k,
                                          double lambda, double* out) {
  return Guard([&] {
    return ScalarResult(hdp::SolvePerStepEpsilonPdp(eps_total, k, lambda), out);
  });
}

hdp_status hdp_parallel_compose_hdp(double e1, double e2, double* out) {
  return Guard(
      [&] { return ScalarResult(hdp::ParallelComposeHdp(e1, e2), out); });
}

hdp_status hdp_group_privacy_hdp(double epsilon, int k, double* out) {
  return Guard(
      [&] { return ScalarResult(hdp::GroupPrivacyHdp(epsilon, k), out); });
}

hdp_status hdp_hdp_to_approx_dp(double epsilon, double* dp_epsilon,
                                double* dp_delta) {
  return Guard([&] {
    if (dp_epsilon == nullptr) return NullArgument("dp_epsilon");
    if (dp_delta == nullptr) return NullArgument("dp_delta");
    auto r = hdp::HdpToApproxDp(epsilon);
    if (!r.ok()) return Report(r.status());
    *dp_epsilon = r->epsilon;
    *dp_delta = r->delta;
    return HDP_OK;
  });
}

hdp_status hdp_hdp_to_gdp(double epsilon, double* mu, int* exists) {
  return Guard([&] {
    if (mu == nullptr) return NullArgument("mu");
    if (exists == nullptr) return NullArgument("exists");
    auto r = hdp::HdpToGdp(epsilon);
    if (!r.ok()) return Report(r.status());
    *exists = r->has_value() ? 1 : 0;
    if (r->has_value()) *mu = **r;
    return HDP_OK;
  });
}

hdp_status hdp_pdp_to_rdp(double lambda, double epsilon, double* rdp_alpha,
                          double* rdp_epsilon, double* rdp_epsilon_loose) {
  return Guard([&] {
    if (rdp_alpha == nullptr) return NullArgument("rdp_alpha");
    if (rdp_epsilon == nullptr) return NullArgument("rdp_epsilon");
    if (rdp_epsilon_loose == nullptr) return NullArgument("rdp_epsilon_loose");
    auto r = hdp::PdpToRdp(hdp::PrivacyBudget{lambda, epsilon});
    if (!r.ok()) return Report(r.status());
    *rdp_alpha = r->alpha;
    *rdp_epsilon = r->epsilon;
    *rdp_epsilon_loose = r->loose_epsilon;
    return HDP_OK;
  });
}

hdp_status hdp_pdp_to_approx_dp(double lambda, double epsilon, double delta,
                                double* dp_epsilon) {
  return Guard([&] {
    return ScalarResult(
        hdp::PdpToApproxDp(hdp::PrivacyBudget{lambda, epsilon}, delta),
        dp_epsilon);
  });
}

hdp_status hdp_dataset_create(const double* values, size_t count,
                              hdp_dataset** out) {
  return Guard([&] {
    if (out == nullptr) return NullArgument("out");
    if (values == nullptr && count > 0) return NullArgument("values");
    for (size_t i = 0; i < count; ++i) {
      if (!std::isfinite(values[i])) {
        return Fail(HDP_ERR_INVALID_ARGUMENT,
                    "dataset value " + std::to_string(i) + " is not finite");
      }
    }
    *out = new hdp_dataset{std::vector<double>(values, values + count)};
    return HDP_OK;
  });
}

hdp_status hdp_dataset_load(const char* path, hdp_dataset** out) {
  return Guard([&] {
    if (path == nullptr) return NullArgument("path");
    if (out == nullptr) return NullArgument("out");
    auto r = hdp::ReadDataFile(path);
    if (!r.ok()) return Report(r.status());
    *out = new hdp_dataset{*std::move(r)};
    return HDP_OK;
  });
}

size_t hdp_dataset_size(const hdp_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->values.size();
}

void hdp_dataset_destroy(hdp_dataset* dataset) { delete dataset; }

hdp_status hdp_silverman_bandwidth(const hdp_dataset* dataset, double* out) {
  return Guard([&] {
    if (dataset == nullptr) return NullArgument("dataset");
    return ScalarResult(hdp::SilvermanBandwidth(dataset->values), out);
  });
}

hdp_status hdp_mle(const hdp_dataset* dataset, double theta[2]) {
  return Guard([&] {
    if (dataset == nullptr) return NullArgument("dataset");
    if (theta == nullptr) return NullArgument("theta");
    auto r = hdp::MleEstimate(dataset->values);
    if (!r.ok()) return Report(r.status());
    CopyPair(*r, theta);
    return HDP_OK;
  });
}

void hdp_estimate_options_init(hdp_estimate_options* options) {
  if (options == nullptr) return;
  const hdp::EstimateOptions d;
  options->algorithm = HDP_ALGO_GD;
  options->iterations = 0;
  options->k_constant = 0.0;
  options->learning_rate = d.learning_rate;
  options->epsilon = d.epsilon;
  options->lambda = d.lambda;
  options->sensitivity_exponent = d.sensitivity_exponent;
  options->weak_sensitivity = 0;
  options->weak_constant = 0.0;
  options->hessian_floor = d.hessian_floor;
  options->sigma_min = d.sigma_min;
  options->seed = d.seed;
  options->mc_multiplier = d.mc_multiplier;
  options->bandwidth = 0.0;
  options->truncation = 0.0;
  options->level = d.level;
  options->correction = HDP_CORRECTION_CALIBRATED;
  options->cov_mode = HDP_COV_PRIVATE;
  options->start = HDP_START_AUTO;
  options->start_mu = d.start_mu;
  options->start_sigma = d.start_sigma;
}

hdp_status hdp_estimate(const hdp_dataset* dataset,
                        const hdp_estimate_options* options,
                        hdp_estimate_result** out) {
  return Guard([&] {
    if (dataset == nullptr) return NullArgument("dataset");
    if (options == nullptr) return NullArgument("options");
    if (out == nullptr) return NullArgument("out");
    auto opts = ConvertOptions(options);
    if (!opts.ok()) return Report(opts.status());
    auto r = hdp::EstimateFromData(dataset->values, *opts);
    if (!r.ok()) return Report(r.status());
    *out = new hdp_estimate_result{*std::move(r)};
    return HDP_OK;
  });
}

void hdp_estimate_result_destroy(hdp_estimate_result* result) { delete result; }

hdp_status hdp_estimate_result_ci(const hdp_estimate_result* result,
                                  hdp_ci_report* out) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    if (out == nullptr) return NullArgument("out");
    FillCi(result->report.ci, out);
    return HDP_OK;
  });
}

hdp_status hdp_estimate_result_epsilon(const hdp_estimate_result* result,
                                       double* estimate, double* with_cov_loose,
                                       double* with_cov) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    if (estimate != nullptr) *estimate = result->report.epsilon_estimate;
    if (with_cov_loose != nullptr) {
      *with_cov_loose = result->report.epsilon_with_cov_loose;
    }
    if (with_cov != nullptr) *with_cov = result->report.epsilon_with_cov;
    return HDP_OK;
  });
}

int hdp_estimate_result_iterations(const hdp_estimate_result* result) {
  return result == nullptr ? 0 : result->report.optimizer.iterations;
}

double hdp_estimate_result_bandwidth(const hdp_estimate_result* result) {
  return result == nullptr ? 0.0 : result->report.bandwidth;
}

size_t hdp_estimate_result_mc_samples(const hdp_estimate_result* result) {
  return result == nullptr ? 0 : result->report.mc_samples;
}

hdp_status hdp_estimate_result_budget_split(const hdp_estimate_result* result,
                                            double* eps_per_step,
                                            double* eps_per_release) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    const hdp::NoisePlan& plan = result->report.trace.plan;
    if (eps_per_step != nullptr) *eps_per_step = plan.eps_per_step;
    if (eps_per_release != nullptr) *eps_per_release = plan.eps_per_release;
    return HDP_OK;
  });
}

hdp_status hdp_estimate_result_trace_point(const hdp_estimate_result* result,
                                           int k, double* mu, double* sigma,
                                           double* loss, double* eps_spent) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    const hdp::IterateTrace& t = result->report.trace;
    if (k < 0 || static_cast<size_t>(k) >= t.thetas.size()) {
      return Fail(HDP_ERR_INVALID_ARGUMENT, "iteration index out of range");
    }
    if (mu != nullptr) *mu = t.thetas[k][0];
    if (sigma != nullptr) *sigma = t.thetas[k][1];
    if (loss != nullptr) *loss = hdp::McLossContext::ClampLoss(t.losses[k]);
    if (eps_spent != nullptr) *eps_spent = t.eps_spent[k];
    return HDP_OK;
  });
}

hdp_status hdp_estimate_result_write_trace(const hdp_estimate_result* result,
                                           const char* path) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    if (path == nullptr) return NullArgument("path");
    return Report(hdp::WriteTextFile(
        path, hdp::TraceCsv({{0, result->report.trace}})));
  });
}

hdp_status hdp_ci_for_estimate(const hdp_dataset* dataset,
                               const hdp_estimate_options* options, double mu,
                               double sigma, hdp_ci_report* out) {
  return Guard([&] {
    if (dataset == nullptr) return NullArgument("dataset");
    if (options == nullptr) return NullArgument("options");
    if (out == nullptr) return NullArgument("out");
    auto opts = ConvertOptions(options);
    if (!opts.ok()) return Report(opts.status());
    Eigen::VectorXd theta(2);
    theta << mu, sigma;
    auto r = hdp::CiForEstimate(dataset->values, theta, *opts);
    if (!r.ok()) return Report(r.status());
    FillCi(*r, out);
    return HDP_OK;
  });
}

hdp_status hdp_sim_config_create(hdp_sim_config** out) {
  return Guard([&] {
    if (out == nullptr) return NullArgument("out");
    *out = new hdp_sim_config{};
    return HDP_OK;
  });
}

hdp_status hdp_sim_config_preset(const char* name, hdp_sim_config** out) {
  return Guard([&] {
    if (name == nullptr) return NullArgument("name");
    if (out == nullptr) return NullArgument("out");
    auto r = hdp::Preset(name);
    if (!r.ok()) return Report(r.status());
    *out = new hdp_sim_config{*std::move(r)};
    return HDP_OK;
  });
}

hdp_status hdp_sim_config_load(const char* path, hdp_sim_config** out) {
  return Guard([&] {
    if (path == nullptr) return NullArgument("path");
    if (out == nullptr) return NullArgument("out");
    auto r = hdp::LoadSimulationConfig(path);
    if (!r.ok()) return Report(r.status());
    *out = new hdp_sim_config{*std::move(r)};
    return HDP_OK;
  });
}

hdp_status hdp_sim_config_set(hdp_sim_config* config, const char* key,
                              const char* value) {
  return Guard([&] {
    if (config == nullptr) return NullArgument("config");
    if (key == nullptr) return NullArgument("key");
    if (value == nullptr) return NullArgument("value");
    return Report(hdp::ApplyConfigValue(config->config, key, value));
  });
}

hdp_status hdp_sim_config_validate(const hdp_sim_config* config) {
  return Guard([&] {
    if (config == nullptr) return NullArgument("config");
    return Report(hdp::ValidateSimulationConfig(config->config));
  });
}

hdp_status hdp_sim_config_format(const hdp_sim_config* config, char* buffer,
                                 size_t capacity, size_t* needed) {
  return Guard([&] {
    if (config == nullptr) return NullArgument("config");
    return CopyText(hdp::FormatSimulationConfig(config->config), buffer,
                    capacity, needed);
  });
}

void hdp_sim_config_destroy(hdp_sim_config* config) { delete config; }

size_t hdp_preset_count(void) { return hdp::PresetNames().size(); }

const char* hdp_preset_name(size_t index) {
  static const std::vector<std::string>* names =
      new std::vector<std::string>(hdp::PresetNames());
  return index < names->size() ? (*names)[index].c_str() : nullptr;
}

hdp_status hdp_simulate(const hdp_sim_config* config, hdp_sim_result** out) {
  return Guard([&] {
    if (config == nullptr) return NullArgument("config");
    if (out == nullptr) return NullArgument("out");
    auto r = hdp::RunSimulation(config->config);
    if (!r.ok()) return Report(r.status());
    *out = new hdp_sim_result{*std::move(r)};
    return HDP_OK;
  });
}

void hdp_sim_result_destroy(hdp_sim_result* result) { delete result; }

size_t hdp_sim_result_cell_count(const hdp_sim_result* result) {
  return result == nullptr ? 0 : result->result.cells.size();
}

hdp_status hdp_sim_result_cell(const hdp_sim_result* result, size_t index,
                               hdp_cell_summary* out) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    if (out == nullptr) return NullArgument("out");
    if (index >= result->result.cells.size()) {
      return Fail(HDP_ERR_INVALID_ARGUMENT, "cell index out of range");
    }
    const hdp::CellSummary& s = result->result.cells[index];
    out->n = s.n;
    out->alpha = s.alpha;
    out->epsilon = s.epsilon;
    out->reps = s.reps;
    out->n_failed = s.n_failed;
    out->n_thresholded = s.n_thresholded;
    CopyPair(s.mean, out->mean);
    CopyPair(s.se, out->se);
    CopyPair(s.coverage_corrected, out->coverage_corrected);
    CopyPair(s.coverage_uncorrected, out->coverage_uncorrected);
    CopyPair(s.mean_all, out->mean_all);
    CopyPair(s.se_all, out->se_all);
    return HDP_OK;
  });
}

size_t hdp_sim_result_mle_count(const hdp_sim_result* result) {
  return result == nullptr ? 0 : result->result.mle.size();
}

hdp_status hdp_sim_result_mle(const hdp_sim_result* result, size_t index,
                              hdp_mle_summary* out) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    if (out == nullptr) return NullArgument("out");
    if (index >= result->result.mle.size()) {
      return Fail(HDP_ERR_INVALID_ARGUMENT, "MLE index out of range");
    }
    const hdp::MleSummary& s = result->result.mle[index];
    out->n = s.n;
    out->alpha = s.alpha;
    out->reps = s.reps;
    out->n_failed = s.n_failed;
    CopyPair(s.mean, out->mean);
    CopyPair(s.se, out->se);
    CopyPair(s.coverage, out->coverage);
    return HDP_OK;
  });
}

hdp_status hdp_sim_result_table_csv(const hdp_sim_result* result, char* buffer,
                                    size_t capacity, size_t* needed) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    return CopyText(hdp::TableCsv(result->result, result->result.config.n),
                    buffer, capacity, needed);
  });
}

hdp_status hdp_sim_result_write(const hdp_sim_result* result, const char* dir,
                                int write_replications) {
  return Guard([&] {
    if (result == nullptr) return NullArgument("result");
    if (dir == nullptr) return NullArgument("dir");
    return Report(hdp::WriteSimulationOutputs(result->result, dir,
                                              write_replications != 0)
                      .status());
  });
}

}  // extern "C"
