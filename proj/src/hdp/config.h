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

// Simulation configuration, its key/value text format and the named presets.
//
// Format: one `key = value` per line. Blank lines and lines starting with '#'
// are ignored; a trailing '# ...' comment is stripped. Lists are
// comma-separated. A `preset` key, wherever it appears, is applied before
// every other key. Errors name the origin, line and key.

#ifndef HDP_CONFIG_H_
#define HDP_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "hdp/inference.h"
#include "hdp/optimize.h"
#include "hdp/privacy.h"

namespace hdp {

enum class BandwidthMode {
  // Silverman bandwidth of the first replication's dataset, shared by every
  // replication of the same (n, alpha) cell.
  kAuto,
  // Silverman bandwidth of each replication's own dataset.
  kPerReplication,
  // The fixed value in SimulationConfig::bandwidth_value.
  kFixed,
};

struct SimulationConfig {
  std::string name = "custom";
  std::size_t n = 1000;
  int reps = 500;
  double true_mu = 5.0;
  double true_sigma = 2.0;
  // Total budgets. HDP units when lambda = -1/2, power-divergence units
  // otherwise. +inf requests the non-private estimator.
  std::vector<double> epsilon_grid = {2.0};
  double lambda = kHdpLambda;
  Algorithm algorithm = Algorithm::kGradientDescent;
  // Unset: automatic K from n.
  std::optional<int> iterations = 50;
  std::optional<double> k_constant;
  double learning_rate = 0.5;
  double sensitivity_exponent = 1.7;
  SensitivityRegime regime = SensitivityRegime::kSharp;
  std::optional<double> weak_constant;
  double hessian_floor = kDefaultHessianFloor;
  double sigma_min = 0.05;
  std::uint64_t seed = 20260101;
  std::vector<double> alpha_grid = {0.0};
  double contamination_lo = 9.34;
  double contamination_hi = 10.15;
  bool threshold = true;
  double threshold_lo = 0.007;
  double threshold_hi = 0.995;
  // Monte Carlo sample count is mc_multiplier * n.
  int mc_multiplier = 5;
  BandwidthMode bandwidth = BandwidthMode::kAuto;
  double bandwidth_value = 0.0;
  std::optional<double> truncation;
  double level = 0.95;
  CorrectionMode correction = CorrectionMode::kCalibrated;
  CovarianceMode cov_mode = CovarianceMode::kPrivate;
  StartMode start = StartMode::kAuto;
  double start_mu = 1.0;
  double start_sigma = 1.0;
  bool include_mle = false;
  // Sample sizes for a coverage-versus-n sweep; empty runs only n.
  std::vector<std::size_t> n_grid;
  // Replications whose iterate paths are exported.
  int trace_reps = 0;
  // Worker threads; 0 uses the hardware concurrency.
  int threads = 0;
};

absl::Status ValidateSimulationConfig(const SimulationConfig& config);

// Applies one key/value pair. Errors name the key.
absl::Status ApplyConfigValue(SimulationConfig& config, absl::string_view key,
                              absl::string_view value);

// Parses text on top of base. origin labels diagnostics.
absl::StatusOr<SimulationConfig> ParseSimulationConfig(
    absl::string_view text, absl::string_view origin,
    const SimulationConfig& base = SimulationConfig());
absl::StatusOr<SimulationConfig> LoadSimulationConfig(const std::string& path);

// Writes config in the text format; parsing the result reproduces it.
std::string FormatSimulationConfig(const SimulationConfig& config);

std::vector<std::string> PresetNames();
absl::StatusOr<SimulationConfig> Preset(absl::string_view name);

// Budget for one entry of the epsilon grid.
PrivacyBudget BudgetForEpsilon(double epsilon, double lambda);
// True when the grid entry requests no privacy.
bool IsNonPrivateEpsilon(double epsilon, double lambda);

}  // namespace hdp

#endif  // HDP_CONFIG_H_
