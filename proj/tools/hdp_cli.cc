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

// hdp: command line front end over the C API.
//
// Exit codes: 0 ok, 1 I/O, 2 validation, 3 numerical failure.
// Every number is rendered with %.10g. With --json the same rounded values
// are emitted as a JSON object; non-finite values appear as the strings
// "inf", "-inf" and "nan".

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hdp/hdp.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

constexpr std::uint64_t kDefaultSeed = 20260101;

// Thrown to unwind a subcommand with a specific exit code.
struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void Invalid(const std::string& message) {
  throw CliFailure{kExitValidation, message};
}

int ExitCodeFor(hdp_status status) {
  switch (status) {
    case HDP_OK:
      return kExitOk;
    case HDP_ERR_IO:
      return kExitIo;
    case HDP_ERR_INVALID_ARGUMENT:
    case HDP_ERR_UNSUPPORTED:
      return kExitValidation;
    case HDP_ERR_NUMERICAL:
    case HDP_ERR_INTERNAL:
      return kExitNumerical;
  }
  return kExitNumerical;
}

void Check(hdp_status status) {
  if (status != HDP_OK) {
    throw CliFailure{ExitCodeFor(status), hdp_last_error()};
  }
}

std::string Format(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// The value a reader of the human output would parse back.
Json Num(double x) {
  if (!std::isfinite(x)) return Format(x);
  return std::strtod(Format(x).c_str(), nullptr);
}

Json Pair(const double v[2]) { return Json::array({Num(v[0]), Num(v[1])}); }

// Parses a budget: a number, or "inf" / "nonprivate" for no privacy.
double ParseEpsilon(const std::string& text) {
  if (text == "inf" || text == "nonprivate") {
    return std::numeric_limits<double>::infinity();
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    Invalid("invalid epsilon '" + text + "'");
  }
  return v;
}

std::optional<std::uint64_t> EnvSeed() {
  const char* env = std::getenv("HDP_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno == ERANGE || env[0] == '-') {
    Invalid(std::string("HDP_SEED is not an unsigned integer: '") + env + "'");
  }
  return v;
}

void PrintHuman(const Json& j, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    std::cout << indent << it.key() << ":";
    if (v.is_object()) {
      std::cout << "\n";
      PrintHuman(v, indent + "  ");
      continue;
    }
    std::cout << " ";
    if (v.is_array()) {
      std::cout << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) std::cout << ", ";
        if (v[i].is_number_float()) {
          std::cout << Format(v[i].get<double>());
        } else if (v[i].is_string()) {
          std::cout << v[i].get<std::string>();
        } else {
          std::cout << v[i].dump();
        }
      }
      std::cout << "]\n";
    } else if (v.is_number_float()) {
      std::cout << Format(v.get<double>()) << "\n";
    } else if (v.is_string()) {
      std::cout << v.get<std::string>() << "\n";
    } else {
      std::cout << v.dump() << "\n";
    }
  }
}

void Emit(const Json& j, bool json) {
  if (json) {
    std::cout << j.dump(2) << "\n";
  } else {
    PrintHuman(j, "");
  }
}

// ---- calibrate -----------------------------------------------------------

struct CalibrateArgs {
  std::string mech;
  bool hdp = false;
  std::optional<double> lambda;
  double eps = 0.0;
  double sens = 1.0;
  int dim = 1;
  bool exact = false;
};

void AddBudgetFlags(CLI::App* cmd, bool* hdp, std::optional<double>* lambda) {
  auto* h = cmd->add_flag("--hdp", *hdp,
                          "Hellinger budget (squared Hellinger units, <= 2)");
  auto* l = cmd->add_option("--lambda", *lambda, "Power-divergence order");
  h->excludes(l);
}

// HDP is the default budget family; --hdp only makes it explicit.
double ResolveLambda(const std::optional<double>& lambda) {
  return lambda.has_value() ? *lambda : -0.5;
}

Json RunCalibrate(const CalibrateArgs& a) {
  hdp_noise_spec spec{};
  const bool is_hdp = !a.lambda.has_value();
  const double lambda = ResolveLambda(a.lambda);
  if (a.exact && (a.mech != "laplace" || !is_hdp)) {
    Invalid("--exact applies to --mech laplace with a Hellinger budget");
  }
  if (a.mech == "gaussian") {
    Check(is_hdp ? hdp_calibrate_gaussian_hdp(a.sens, a.eps, a.dim, &spec)
                 : hdp_calibrate_gaussian_pdp(a.sens, lambda, a.eps, a.dim,
                                              &spec));
  } else if (a.exact) {
    if (a.dim != 1) Invalid("--exact requires --dim 1");
    Check(hdp_calibrate_laplace_hdp_exact_1d(a.sens, a.eps, &spec));
  } else {
    // Hellinger budgets are twice as large in power-divergence units.
    Check(hdp_calibrate_laplace_pdp(a.sens, lambda, is_hdp ? 2.0 * a.eps : a.eps,
                                    a.dim, &spec));
  }
  Json out;
  out["mechanism"] = a.mech;
  out["budget"] = is_hdp ? "hdp" : "pdp";
  out["lambda"] = Num(lambda);
  out["epsilon"] = Num(a.eps);
  out["sensitivity"] = Num(spec.sensitivity);
  out["dim"] = spec.dim;
  out["scale"] = Num(spec.scale);
  out["variance"] = Num(spec.variance);
  if (spec.scale == 0.0) out["note"] = "non-private: no noise is required";
  return out;
}

// ---- compose -------------------------------------------------------------

struct ComposeArgs {
  std::vector<double> eps;
  bool hdp = false;
  std::optional<double> lambda;
  std::optional<double> per_step;
  std::optional<double> total;
  std::optional<int> k;
  bool parallel = false;
  std::optional<int> group;
};

Json RunCompose(const ComposeArgs& a) {
  const bool is_hdp = !a.lambda.has_value();
  const double lambda = ResolveLambda(a.lambda);
  const int modes = (a.per_step ? 1 : 0) + (a.total ? 1 : 0) +
                    (a.parallel ? 1 : 0) + (a.group ? 1 : 0);
  if (modes > 1) {
    Invalid("choose one of --per-step, --total, --parallel, --group");
  }
  Json out;
  out["budget"] = is_hdp ? "hdp" : "pdp";
  out["lambda"] = Num(lambda);
  double result = 0.0;
  if (a.per_step || a.total) {
    if (!a.k) Invalid("--per-step and --total require --k");
    if (!a.eps.empty()) Invalid("--eps cannot be combined with --per-step/--total");
    if (a.per_step) {
      Check(is_hdp ? hdp_compose_hdp_k(*a.per_step, *a.k, &result)
                   : hdp_compose_pdp_k(*a.per_step, *a.k, lambda, &result));
      out["mode"] = "k-fold";
      out["per_step"] = Num(*a.per_step);
      out["k"] = *a.k;
      out["total"] = Num(result);
    } else {
      Check(is_hdp ? hdp_solve_per_step_epsilon(*a.total, *a.k, &result)
                   : hdp_solve_per_step_epsilon_pdp(*a.total, *a.k, lambda,
                                                    &result));
      out["mode"] = "solve";
      out["total"] = Num(*a.total);
      out["k"] = *a.k;
      out["per_step"] = Num(result);
    }
    return out;
  }
  if (a.group) {
    if (!is_hdp) Invalid("--group supports Hellinger budgets only");
    if (a.eps.size() != 1) Invalid("--group requires exactly one --eps");
    Check(hdp_group_privacy_hdp(a.eps[0], *a.group, &result));
    out["mode"] = "group";
    out["epsilon"] = Num(a.eps[0]);
    out["group_size"] = *a.group;
    out["total"] = Num(result);
    return out;
  }
  if (a.k) Invalid("--k requires --per-step or --total");
  if (a.eps.empty()) Invalid("--eps is required");
  if (a.parallel && !is_hdp) {
    Invalid("--parallel supports Hellinger budgets only");
  }
  result = a.eps[0];
  if (a.eps.size() == 1) {
    // A single mechanism composes to itself; still validate the budget.
    Check(is_hdp ? hdp_compose_hdp(a.eps[0], 0.0, &result)
                 : hdp_compose_pdp(a.eps[0], 0.0, lambda, &result));
  }
  for (std::size_t i = 1; i < a.eps.size(); ++i) {
    if (a.parallel) {
      Check(hdp_parallel_compose_hdp(result, a.eps[i], &result));
    } else {
      Check(is_hdp ? hdp_compose_hdp(result, a.eps[i], &result)
                   : hdp_compose_pdp(result, a.eps[i], lambda, &result));
    }
  }
  out["mode"] = a.parallel ? "parallel" : "sequential";
  Json list = Json::array();
  for (double e : a.eps) list.push_back(Num(e));
  out["inputs"] = list;
  out["total"] = Num(result);
  return out;
}

// ---- convert -------------------------------------------------------------

struct ConvertArgs {
  std::string to;
  bool hdp = false;
  std::optional<double> lambda;
  double eps = 0.0;
  std::optional<double> delta;
};

Json RunConvert(const ConvertArgs& a) {
  const bool is_hdp = !a.lambda.has_value();
  const double lambda = ResolveLambda(a.lambda);
  // Power-divergence units of the input budget.
  const double eps_pd = is_hdp ? 2.0 * a.eps : a.eps;
  Json out;
  out["budget"] = is_hdp ? "hdp" : "pdp";
  out["lambda"] = Num(lambda);
  out["epsilon"] = Num(a.eps);
  out["to"] = a.to;
  if (a.to == "approx") {
    if (is_hdp && !a.delta) {
      double dp_eps = 0.0;
      double dp_delta = 0.0;
      Check(hdp_hdp_to_approx_dp(a.eps, &dp_eps, &dp_delta));
      out["dp_epsilon"] = Num(dp_eps);
      out["dp_delta"] = Num(dp_delta);
    } else {
      if (!a.delta) Invalid("--to approx with --lambda requires --delta");
      double dp_eps = 0.0;
      Check(hdp_pdp_to_approx_dp(lambda, eps_pd, *a.delta, &dp_eps));
      out["dp_epsilon"] = Num(dp_eps);
      out["dp_delta"] = Num(*a.delta);
    }
  } else if (a.to == "gdp") {
    if (!is_hdp) Invalid("--to gdp supports Hellinger budgets only");
    if (a.delta) Invalid("--delta applies to --to approx only");
    double mu = 0.0;
    int exists = 0;
    Check(hdp_hdp_to_gdp(a.eps, &mu, &exists));
    out["gdp_exists"] = exists != 0;
    if (exists != 0) out["gdp_mu"] = Num(mu);
  } else {
    if (a.delta) Invalid("--delta applies to --to approx only");
    double alpha = 0.0;
    double rdp = 0.0;
    double loose = 0.0;
    Check(hdp_pdp_to_rdp(lambda, eps_pd, &alpha, &rdp, &loose));
    out["rdp_alpha"] = Num(alpha);
    out["rdp_epsilon"] = Num(rdp);
    out["rdp_epsilon_loose"] = Num(loose);
  }
  return out;
}

// ---- estimate / ci -------------------------------------------------------

struct EstimateArgs {
  std::string data;
  std::string algo = "gd";
  std::string eps = "2";
  std::optional<double> lambda;
  int k = 0;
  double k_constant = 0.0;
  std::optional<double> eta;
  std::optional<double> p;
  std::string sensitivity = "sharp";
  double weak_constant = 0.0;
  std::optional<double> hessian_floor;
  std::optional<double> sigma_min;
  std::optional<std::uint64_t> seed;
  std::optional<int> mc_multiplier;
  double bandwidth = 0.0;
  double truncation = 0.0;
  std::optional<double> level;
  std::string correction = "calibrated";
  std::string cov_mode = "private";
  std::string start = "auto";
  std::optional<double> start_mu;
  std::optional<double> start_sigma;
  std::string trace;
  // ci only.
  double mu = 0.0;
  double sigma = 0.0;
};

void AddEstimationFlags(CLI::App* cmd, EstimateArgs* a) {
  cmd->add_option("--data", a->data, "Data file, one value per line")
      ->required();
  cmd->add_option("--algo", a->algo, "Optimizer")
      ->check(CLI::IsMember({"gd", "nr"}))
      ->capture_default_str();
  cmd->add_option("--eps", a->eps,
                  "Budget; Hellinger units unless --lambda is given; "
                  "'inf' disables privacy")
      ->capture_default_str();
  cmd->add_option("--lambda", a->lambda, "Power-divergence order");
  cmd->add_option("--K", a->k, "Iterations; 0 selects K from n")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--k-constant", a->k_constant,
                  "Constant of the automatic K rule; 0 selects the default")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--eta", a->eta, "Gradient descent learning rate");
  cmd->add_option("--p", a->p, "Sensitivity exponent");
  cmd->add_option("--sensitivity", a->sensitivity, "Sensitivity regime")
      ->check(CLI::IsMember({"sharp", "weak"}))
      ->capture_default_str();
  cmd->add_option("--weak-constant", a->weak_constant,
                  "Weak-regime constant; 0 uses the model constants")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--hessian-floor", a->hessian_floor,
                  "Eigenvalue floor for perturbed Hessians");
  cmd->add_option("--sigma-min", a->sigma_min, "Lower bound on sigma");
  cmd->add_option("--seed", a->seed, "Seed; defaults to $HDP_SEED");
  cmd->add_option("--mc-multiplier", a->mc_multiplier,
                  "Monte Carlo samples per data point");
  cmd->add_option("--bandwidth", a->bandwidth, "Kernel bandwidth; 0 = Silverman")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--truncation", a->truncation,
                  "Density truncation level; 0 disables")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--level", a->level, "Confidence level");
  cmd->add_option("--correction", a->correction, "Interval correction")
      ->check(CLI::IsMember({"verbatim", "squared", "calibrated"}))
      ->capture_default_str();
  cmd->add_option("--cov-mode", a->cov_mode, "Covariance estimator")
      ->check(CLI::IsMember({"sandwich", "private"}))
      ->capture_default_str();
  cmd->add_option("--start", a->start, "Starting point")
      ->check(CLI::IsMember({"fixed", "robust", "moments", "auto"}))
      ->capture_default_str();
  cmd->add_option("--start-mu", a->start_mu, "Fixed starting mu");
  cmd->add_option("--start-sigma", a->start_sigma, "Fixed starting sigma");
}

hdp_estimate_options BuildOptions(const EstimateArgs& a) {
  hdp_estimate_options o;
  hdp_estimate_options_init(&o);
  o.algorithm = a.algo == "nr" ? HDP_ALGO_NR : HDP_ALGO_GD;
  o.iterations = a.k;
  o.k_constant = a.k_constant;
  o.epsilon = ParseEpsilon(a.eps);
  // At lambda = -1/2 the budget stays in Hellinger units.
  if (a.lambda) o.lambda = *a.lambda;
  if (a.eta) o.learning_rate = *a.eta;
  if (a.p) o.sensitivity_exponent = *a.p;
  o.weak_sensitivity = a.sensitivity == "weak" ? 1 : 0;
  o.weak_constant = a.weak_constant;
  if (a.hessian_floor) o.hessian_floor = *a.hessian_floor;
  if (a.sigma_min) o.sigma_min = *a.sigma_min;
  o.seed = a.seed ? *a.seed : EnvSeed().value_or(kDefaultSeed);
  if (a.mc_multiplier) o.mc_multiplier = *a.mc_multiplier;
  o.bandwidth = a.bandwidth;
  o.truncation = a.truncation;
  if (a.level) o.level = *a.level;
  o.correction = a.correction == "verbatim"  ? HDP_CORRECTION_VERBATIM
                 : a.correction == "squared" ? HDP_CORRECTION_SQUARED
                                             : HDP_CORRECTION_CALIBRATED;
  o.cov_mode = a.cov_mode == "sandwich" ? HDP_COV_SANDWICH : HDP_COV_PRIVATE;
  o.start = a.start == "fixed"     ? HDP_START_FIXED
            : a.start == "robust"  ? HDP_START_ROBUST
            : a.start == "moments" ? HDP_START_MOMENTS
                                   : HDP_START_AUTO;
  if (a.start_mu) o.start_mu = *a.start_mu;
  if (a.start_sigma) o.start_sigma = *a.start_sigma;
  return o;
}

// Owns a dataset handle.
class Dataset {
 public:
  explicit Dataset(const std::string& path) {
    Check(hdp_dataset_load(path.c_str(), &handle_));
  }
  ~Dataset() { hdp_dataset_destroy(handle_); }
  Dataset(const Dataset&) = delete;
  Dataset& operator=(const Dataset&) = delete;
  const hdp_dataset* get() const { return handle_; }

 private:
  hdp_dataset* handle_ = nullptr;
};

Json CiJson(const hdp_ci_report& ci) {
  Json out;
  out["level"] = Num(ci.level);
  out["critical_value"] = Num(ci.critical_value);
  const char* names[2] = {"mu", "sigma"};
  for (int j = 0; j < 2; ++j) {
    Json c;
    const double plain[2] = {ci.plain_lo[j], ci.plain_hi[j]};
    const double corr[2] = {ci.corrected_lo[j], ci.corrected_hi[j]};
    c["plain"] = Pair(plain);
    c["corrected"] = Pair(corr);
    out[names[j]] = c;
  }
  out["cov"] = Json::array(
      {Num(ci.cov[0]), Num(ci.cov[1]), Num(ci.cov[2]), Num(ci.cov[3])});
  return out;
}

Json RunEstimate(const EstimateArgs& a) {
  const hdp_estimate_options options = BuildOptions(a);
  const Dataset data(a.data);
  hdp_estimate_result* raw = nullptr;
  Check(hdp_estimate(data.get(), &options, &raw));
  std::unique_ptr<hdp_estimate_result, void (*)(hdp_estimate_result*)> result(
      raw, hdp_estimate_result_destroy);
  hdp_ci_report ci{};
  Check(hdp_estimate_result_ci(result.get(), &ci));
  double eps_est = 0.0;
  double eps_loose = 0.0;
  double eps_cov = 0.0;
  Check(hdp_estimate_result_epsilon(result.get(), &eps_est, &eps_loose,
                                    &eps_cov));
  double per_step = 0.0;
  double per_release = 0.0;
  Check(hdp_estimate_result_budget_split(result.get(), &per_step,
                                         &per_release));
  if (!a.trace.empty()) {
    Check(hdp_estimate_result_write_trace(result.get(), a.trace.c_str()));
  }
  Json out;
  out["n"] = hdp_dataset_size(data.get());
  out["algorithm"] = a.algo;
  out["iterations"] = hdp_estimate_result_iterations(result.get());
  out["seed"] = options.seed;
  out["bandwidth"] = Num(hdp_estimate_result_bandwidth(result.get()));
  out["mc_samples"] = hdp_estimate_result_mc_samples(result.get());
  out["estimate"] = Pair(ci.estimate);
  Json spent;
  spent["estimate"] = Num(eps_est);
  spent["per_step"] = Num(per_step);
  if (options.algorithm == HDP_ALGO_NR) spent["per_release"] = Num(per_release);
  spent["with_cov_loose"] = Num(eps_loose);
  spent["with_cov"] = Num(eps_cov);
  out["epsilon_spent"] = spent;
  out["ci"] = CiJson(ci);
  if (!a.trace.empty()) out["trace"] = a.trace;
  return out;
}

Json RunCi(const EstimateArgs& a) {
  const hdp_estimate_options options = BuildOptions(a);
  const Dataset data(a.data);
  hdp_ci_report ci{};
  Check(hdp_ci_for_estimate(data.get(), &options, a.mu, a.sigma, &ci));
  Json out;
  out["n"] = hdp_dataset_size(data.get());
  out["estimate"] = Pair(ci.estimate);
  out["epsilon_total"] = Num(ci.epsilon_total);
  out["ci"] = CiJson(ci);
  return out;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  std::string preset;
  std::string config;
  std::vector<std::string> sets;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out;
  bool replications = false;
  bool list_presets = false;
};

class SimConfig {
 public:
  SimConfig() = default;
  ~SimConfig() { hdp_sim_config_destroy(handle_); }
  SimConfig(const SimConfig&) = delete;
  SimConfig& operator=(const SimConfig&) = delete;
  hdp_sim_config** out() { return &handle_; }
  hdp_sim_config* get() const { return handle_; }
  void Set(const std::string& key, const std::string& value) {
    const hdp_status s = hdp_sim_config_set(handle_, key.c_str(), value.c_str());
    if (s != HDP_OK) {
      throw CliFailure{ExitCodeFor(s), std::string("--set ") + key + "=" +
                                           value + ": " + hdp_last_error()};
    }
  }

 private:
  hdp_sim_config* handle_ = nullptr;
};

std::string TableCsv(const hdp_sim_result* result) {
  std::size_t needed = 0;
  hdp_sim_result_table_csv(result, nullptr, 0, &needed);
  std::string text(needed, '\0');
  Check(hdp_sim_result_table_csv(result, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

int RunSimulate(const SimulateArgs& a, bool json) {
  if (a.list_presets) {
    Json names = Json::array();
    for (std::size_t i = 0; i < hdp_preset_count(); ++i) {
      names.push_back(hdp_preset_name(i));
    }
    if (json) {
      std::cout << Json{{"presets", names}}.dump(2) << "\n";
    } else {
      for (const auto& n : names) std::cout << n.get<std::string>() << "\n";
    }
    return kExitOk;
  }
  if (!a.preset.empty() && !a.config.empty()) {
    Invalid("--preset and --config are mutually exclusive");
  }
  SimConfig cfg;
  if (!a.config.empty()) {
    Check(hdp_sim_config_load(a.config.c_str(), cfg.out()));
  } else if (!a.preset.empty()) {
    Check(hdp_sim_config_preset(a.preset.c_str(), cfg.out()));
  } else {
    Check(hdp_sim_config_create(cfg.out()));
  }
  // Precedence: explicit flags over --set over $HDP_SEED over the file.
  if (const auto env = EnvSeed(); env && !a.seed) {
    cfg.Set("seed", std::to_string(*env));
  }
  for (const std::string& kv : a.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      Invalid("--set expects key=value, got '" + kv + "'");
    }
    cfg.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (a.reps) cfg.Set("reps", std::to_string(*a.reps));
  if (a.seed) cfg.Set("seed", std::to_string(*a.seed));
  if (a.threads) cfg.Set("threads", std::to_string(*a.threads));
  Check(hdp_sim_config_validate(cfg.get()));

  hdp_sim_result* raw = nullptr;
  Check(hdp_simulate(cfg.get(), &raw));
  std::unique_ptr<hdp_sim_result, void (*)(hdp_sim_result*)> result(
      raw, hdp_sim_result_destroy);
  if (!a.out.empty()) {
    Check(hdp_sim_result_write(result.get(), a.out.c_str(),
                               a.replications ? 1 : 0));
  }
  if (!json) {
    std::cout << TableCsv(result.get());
    for (std::size_t i = 0; i < hdp_sim_result_mle_count(result.get()); ++i) {
      hdp_mle_summary m{};
      Check(hdp_sim_result_mle(result.get(), i, &m));
      std::cout << "mle n=" << m.n << " alpha=" << Format(m.alpha)
                << ": mean [" << Format(m.mean[0]) << ", " << Format(m.mean[1])
                << "] se [" << Format(m.se[0]) << ", " << Format(m.se[1])
                << "]\n";
    }
    if (!a.out.empty()) std::cout << "wrote outputs to " << a.out << "\n";
    return kExitOk;
  }
  Json out;
  Json cells = Json::array();
  for (std::size_t i = 0; i < hdp_sim_result_cell_count(result.get()); ++i) {
    hdp_cell_summary c{};
    Check(hdp_sim_result_cell(result.get(), i, &c));
    cells.push_back(Json{{"n", c.n},
                         {"alpha", Num(c.alpha)},
                         {"epsilon", Num(c.epsilon)},
                         {"reps", c.reps},
                         {"n_failed", c.n_failed},
                         {"n_thresholded", c.n_thresholded},
                         {"mean", Pair(c.mean)},
                         {"se", Pair(c.se)},
                         {"cov_corr", Pair(c.coverage_corrected)},
                         {"cov_uncorr", Pair(c.coverage_uncorrected)},
                         {"mean_all", Pair(c.mean_all)},
                         {"se_all", Pair(c.se_all)}});
  }
  out["cells"] = cells;
  Json mle = Json::array();
  for (std::size_t i = 0; i < hdp_sim_result_mle_count(result.get()); ++i) {
    hdp_mle_summary m{};
    Check(hdp_sim_result_mle(result.get(), i, &m));
    mle.push_back(Json{{"n", m.n},
                       {"alpha", Num(m.alpha)},
                       {"reps", m.reps},
                       {"n_failed", m.n_failed},
                       {"mean", Pair(m.mean)},
                       {"se", Pair(m.se)},
                       {"cov", Pair(m.coverage)}});
  }
  out["mle"] = mle;
  if (!a.out.empty()) out["out"] = a.out;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hellinger differential privacy toolkit", "hdp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hdp_version()));
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");
  app.fallthrough();

  CalibrateArgs cal;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Calibrate an additive noise mechanism");
  calibrate->add_option("--mech", cal.mech, "Mechanism")
      ->required()
      ->check(CLI::IsMember({"gaussian", "laplace"}));
  AddBudgetFlags(calibrate, &cal.hdp, &cal.lambda);
  calibrate->add_option("--eps", cal.eps, "Target budget")->required();
  calibrate->add_option("--sens", cal.sens, "Sensitivity")->capture_default_str();
  calibrate->add_option("--dim", cal.dim, "Output dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  calibrate->add_flag("--exact", cal.exact,
                      "Exact one-dimensional Laplace scale under HDP");

  ComposeArgs comp;
  CLI::App* compose =
      app.add_subcommand("compose", "Compose privacy budgets");
  compose->add_option("--eps", comp.eps, "Budgets of the composed mechanisms")
      ->delimiter(',');
  AddBudgetFlags(compose, &comp.hdp, &comp.lambda);
  compose->add_option("--per-step", comp.per_step,
                      "Per-step budget composed --k times");
  compose->add_option("--total", comp.total,
                      "Total budget to split over --k steps");
  compose->add_option("--k", comp.k, "Number of steps")
      ->check(CLI::PositiveNumber);
  compose->add_flag("--parallel", comp.parallel,
                    "Mechanisms act on disjoint data");
  compose->add_option("--group", comp.group, "Group size for group privacy")
      ->check(CLI::PositiveNumber);

  ConvertArgs conv;
  CLI::App* convert =
      app.add_subcommand("convert", "Convert a budget to another framework");
  convert->add_option("--to", conv.to, "Target framework")
      ->required()
      ->check(CLI::IsMember({"approx", "gdp", "rdp"}));
  AddBudgetFlags(convert, &conv.hdp, &conv.lambda);
  convert->add_option("--eps", conv.eps, "Budget")->required();
  convert->add_option("--delta", conv.delta, "Target delta for --to approx");

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Private minimum Hellinger distance estimate");
  AddEstimationFlags(estimate, &est);
  estimate->add_option("--trace", est.trace, "Write the iterate trace CSV");

  EstimateArgs ci_args;
  CLI::App* ci = app.add_subcommand(
      "ci", "Confidence intervals for a given estimate");
  AddEstimationFlags(ci, &ci_args);
  ci->add_option("--mu", ci_args.mu, "Estimate of mu")->required();
  ci->add_option("--sigma", ci_args.sigma, "Estimate of sigma")->required();

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a simulation study");
  simulate->add_option("--preset", sim.preset, "Named preset");
  simulate->add_option("--config", sim.config, "Config file");
  simulate->add_option("--set", sim.sets, "Override key=value (repeatable)");
  simulate->add_option("--reps", sim.reps, "Replications")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim.seed, "Seed; defaults to $HDP_SEED");
  simulate->add_option("--threads", sim.threads, "Worker threads; 0 = all")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", sim.out, "Output directory for CSV files");
  simulate->add_flag("--replications", sim.replications,
                     "Also write the per-replication CSV");
  simulate->add_flag("--list-presets", sim.list_presets, "List presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*calibrate) {
      Emit(RunCalibrate(cal), json);
    } else if (*compose) {
      Emit(RunCompose(comp), json);
    } else if (*convert) {
      Emit(RunConvert(conv), json);
    } else if (*estimate) {
      Emit(RunEstimate(est), json);
    } else if (*ci) {
      Emit(RunCi(ci_args), json);
    } else if (*simulate) {
      return RunSimulate(sim, json);
    }
  } catch (const CliFailure& f) {
    std::cerr << "hdp: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "hdp: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
