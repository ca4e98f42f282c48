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

#include "hdp/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "hdp/status.h"

namespace hdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::StatusOr<double> ParseDouble(absl::string_view text) {
  const std::string lower = absl::AsciiStrToLower(text);
  if (lower == "nonprivate" || lower == "inf" || lower == "+inf" ||
      lower == "infinity") {
    return kInf;
  }
  double value;
  if (!absl::SimpleAtod(text, &value) || std::isnan(value)) {
    return DomainError(absl::StrFormat("'%s' is not a number", text));
  }
  return value;
}

absl::StatusOr<long long> ParseInteger(absl::string_view text) {
  long long value;
  if (!absl::SimpleAtoi(text, &value)) {
    return DomainError(absl::StrFormat("'%s' is not an integer", text));
  }
  return value;
}

absl::StatusOr<bool> ParseBool(absl::string_view text) {
  const std::string lower = absl::AsciiStrToLower(text);
  if (lower == "on" || lower == "true" || lower == "yes" || lower == "1") {
    return true;
  }
  if (lower == "off" || lower == "false" || lower == "no" || lower == "0") {
    return false;
  }
  return DomainError(absl::StrFormat("'%s' is not on/off", text));
}

std::vector<absl::string_view> SplitList(absl::string_view text) {
  std::vector<absl::string_view> out;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    part = absl::StripAsciiWhitespace(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

absl::StatusOr<std::vector<double>> ParseDoubleList(absl::string_view text) {
  std::vector<double> out;
  for (absl::string_view part : SplitList(text)) {
    HDP_ASSIGN_OR_RETURN(double v, ParseDouble(part));
    out.push_back(v);
  }
  if (out.empty()) return DomainError("list is empty");
  return out;
}

absl::StatusOr<std::size_t> ParseSize(absl::string_view text) {
  HDP_ASSIGN_OR_RETURN(long long v, ParseInteger(text));
  if (v < 0) return DomainError(absl::StrFormat("'%s' is negative", text));
  return static_cast<std::size_t>(v);
}

absl::StatusOr<int> ParseInt(absl::string_view text) {
  HDP_ASSIGN_OR_RETURN(long long v, ParseInteger(text));
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    return DomainError(absl::StrFormat("'%s' is out of range", text));
  }
  return static_cast<int>(v);
}

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.17g", x);
}

std::string FormatDoubleList(const std::vector<double>& xs) {
  return absl::StrJoin(xs, ",", [](std::string* out, double x) {
    out->append(FormatDouble(x));
  });
}

using Setter =
    std::function<absl::Status(SimulationConfig&, absl::string_view)>;

template <typename T, typename Parser>
Setter Field(T SimulationConfig::*member, Parser parse) {
  return [member, parse](SimulationConfig& c, absl::string_view v)
             -> absl::Status {
    auto parsed = parse(v);
    if (!parsed.ok()) return parsed.status();
    c.*member = *std::move(parsed);
    return absl::OkStatus();
  };
}

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"name", Field(&SimulationConfig::name,
                     [](absl::string_view v) -> absl::StatusOr<std::string> {
                       return std::string(v);
                     })},
      {"n", Field(&SimulationConfig::n, ParseSize)},
      {"reps", Field(&SimulationConfig::reps, ParseInt)},
      {"true_mu", Field(&SimulationConfig::true_mu, ParseDouble)},
      {"true_sigma", Field(&SimulationConfig::true_sigma, ParseDouble)},
      {"epsilon_grid", Field(&SimulationConfig::epsilon_grid, ParseDoubleList)},
      {"lambda", Field(&SimulationConfig::lambda, ParseDouble)},
      {"algo", Field(&SimulationConfig::algorithm, ParseAlgorithm)},
      {"K",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         if (absl::AsciiStrToLower(v) == "auto") {
           c.iterations.reset();
           return absl::OkStatus();
         }
         HDP_ASSIGN_OR_RETURN(int k, ParseInt(v));
         c.iterations = k;
         return absl::OkStatus();
       }},
      {"k_constant",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         if (absl::AsciiStrToLower(v) == "default") {
           c.k_constant.reset();
           return absl::OkStatus();
         }
         HDP_ASSIGN_OR_RETURN(c.k_constant, ParseDouble(v));
         return absl::OkStatus();
       }},
      {"eta", Field(&SimulationConfig::learning_rate, ParseDouble)},
      {"p", Field(&SimulationConfig::sensitivity_exponent, ParseDouble)},
      {"sensitivity",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         if (v == "sharp") {
           c.regime = SensitivityRegime::kSharp;
         } else if (v == "weak") {
           c.regime = SensitivityRegime::kWeak;
         } else {
           return DomainError(absl::StrFormat(
               "unknown sensitivity regime '%s' (expected sharp or weak)", v));
         }
         return absl::OkStatus();
       }},
      {"weak_constant",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         if (absl::AsciiStrToLower(v) == "model") {
           c.weak_constant.reset();
           return absl::OkStatus();
         }
         HDP_ASSIGN_OR_RETURN(c.weak_constant, ParseDouble(v));
         return absl::OkStatus();
       }},
      {"hessian_floor", Field(&SimulationConfig::hessian_floor, ParseDouble)},
      {"sigma_min", Field(&SimulationConfig::sigma_min, ParseDouble)},
      {"seed",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         std::uint64_t seed;
         if (!absl::SimpleAtoi(v, &seed)) {
           return DomainError(
               absl::StrFormat("'%s' is not a non-negative integer", v));
         }
         c.seed = seed;
         return absl::OkStatus();
       }},
      {"alpha_grid", Field(&SimulationConfig::alpha_grid, ParseDoubleList)},
      {"contamination_lo",
       Field(&SimulationConfig::contamination_lo, ParseDouble)},
      {"contamination_hi",
       Field(&SimulationConfig::contamination_hi, ParseDouble)},
      {"threshold", Field(&SimulationConfig::threshold, ParseBool)},
      {"threshold_lo", Field(&SimulationConfig::threshold_lo, ParseDouble)},
      {"threshold_hi", Field(&SimulationConfig::threshold_hi, ParseDouble)},
      {"mc_multiplier", Field(&SimulationConfig::mc_multiplier, ParseInt)},
      {"bandwidth",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         if (v == "auto") {
           c.bandwidth = BandwidthMode::kAuto;
         } else if (v == "per_rep") {
           c.bandwidth = BandwidthMode::kPerReplication;
         } else {
           HDP_ASSIGN_OR_RETURN(c.bandwidth_value, ParseDouble(v));
           c.bandwidth = BandwidthMode::kFixed;
         }
         return absl::OkStatus();
       }},
      {"truncation",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         if (absl::AsciiStrToLower(v) == "none") {
           c.truncation.reset();
           return absl::OkStatus();
         }
         HDP_ASSIGN_OR_RETURN(c.truncation, ParseDouble(v));
         return absl::OkStatus();
       }},
      {"level", Field(&SimulationConfig::level, ParseDouble)},
      {"correction", Field(&SimulationConfig::correction, ParseCorrectionMode)},
      {"cov_mode", Field(&SimulationConfig::cov_mode, ParseCovarianceMode)},
      {"start", Field(&SimulationConfig::start, ParseStartMode)},
      {"start_mu", Field(&SimulationConfig::start_mu, ParseDouble)},
      {"start_sigma", Field(&SimulationConfig::start_sigma, ParseDouble)},
      {"include_mle", Field(&SimulationConfig::include_mle, ParseBool)},
      {"n_grid",
       [](SimulationConfig& c, absl::string_view v) -> absl::Status {
         std::vector<std::size_t> grid;
         if (absl::AsciiStrToLower(v) != "none") {
           for (absl::string_view part : SplitList(v)) {
             HDP_ASSIGN_OR_RETURN(std::size_t n, ParseSize(part));
             grid.push_back(n);
           }
         }
         c.n_grid = std::move(grid);
         return absl::OkStatus();
       }},
      {"trace_reps", Field(&SimulationConfig::trace_reps, ParseInt)},
      {"threads", Field(&SimulationConfig::threads, ParseInt)},
  };
  return *setters;
}

absl::Status Check(bool ok, absl::string_view key, absl::string_view message) {
  if (ok) return absl::OkStatus();
  return DomainError(absl::StrCat("field '", key, "': ", message));
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

absl::Status LineError(absl::string_view origin, int line,
                       const absl::Status& status) {
  return absl::Status(status.code(), absl::StrFormat("%s:%d: %s", origin, line,
                                                     status.message()));
}

SimulationConfig TableBase(absl::string_view name, Algorithm algo,
                           std::size_t n) {
  SimulationConfig c;
  c.name = std::string(name);
  c.n = n;
  c.algorithm = algo;
  c.iterations = algo == Algorithm::kGradientDescent ? 50 : 5;
  c.epsilon_grid = {2.0, 0.6, 0.2};
  return c;
}

SimulationConfig PdpTable(absl::string_view name, Algorithm algo,
                          double lambda) {
  SimulationConfig c = TableBase(name, algo, 1000);
  c.lambda = lambda;
  c.epsilon_grid = {kInf, 1.2, 0.4};
  return c;
}

SimulationConfig ContaminationTable(absl::string_view name, Algorithm algo,
                                    std::size_t n) {
  SimulationConfig c = TableBase(name, algo, n);
  c.alpha_grid = {0.0, 0.05, 0.1, 0.2, 0.3};
  c.include_mle = true;
  return c;
}

SimulationConfig CoverageFigure(absl::string_view name, Algorithm algo) {
  SimulationConfig c = TableBase(name, algo, 1000);
  c.epsilon_grid = {2.0, 0.6};
  c.n_grid = {50, 100, 200, 300, 500, 1000};
  return c;
}

const std::vector<SimulationConfig>& AllPresets() {
  static const auto* presets = [] {
    const Algorithm gd = Algorithm::kGradientDescent;
    const Algorithm nr = Algorithm::kNewtonRaphson;
    auto* v = new std::vector<SimulationConfig>{
        TableBase("table1", gd, 1000),
        TableBase("table2", nr, 1000),
        PdpTable("table3", gd, 1.0),
        PdpTable("table4", nr, 1.0),
        ContaminationTable("table5", gd, 1000),
        ContaminationTable("table6", nr, 1000),
        PdpTable("tableA7", gd, -0.1),
        PdpTable("tableA8", nr, -0.1),
        PdpTable("tableA9", gd, 0.5),
        PdpTable("tableA10", nr, 0.5),
    };
    const std::size_t sizes[] = {200, 300, 500};
    int index = 11;
    for (std::size_t n : sizes) {
      v->push_back(TableBase(absl::StrCat("tableA", index++), gd, n));
      v->push_back(TableBase(absl::StrCat("tableA", index++), nr, n));
      v->push_back(ContaminationTable(absl::StrCat("tableA", index++), gd, n));
      v->push_back(ContaminationTable(absl::StrCat("tableA", index++), nr, n));
    }
    v->push_back(CoverageFigure("figF5", gd));
    v->push_back(CoverageFigure("figF6", nr));
    SimulationConfig trace_gd = TableBase("traceGD", gd, 1000);
    trace_gd.reps = 20;
    trace_gd.trace_reps = 20;
    SimulationConfig trace_nr = TableBase("traceNR", nr, 1000);
    trace_nr.reps = 20;
    trace_nr.trace_reps = 20;
    v->push_back(trace_gd);
    v->push_back(trace_nr);
    return v;
  }();
  return *presets;
}

}  // namespace

PrivacyBudget BudgetForEpsilon(double epsilon, double lambda) {
  if (lambda == kHdpLambda) {
    return PrivacyBudget::FromHdp(std::min(epsilon, kHdpCeiling));
  }
  // For lambda in (-1, 0) the divergence is bounded by -1 / (lambda
  // (lambda + 1)); an infinite request maps to that vacuous bound.
  const double t = lambda * (lambda + 1.0);
  if (std::isinf(epsilon) && t < 0.0) return PrivacyBudget{lambda, -1.0 / t};
  return PrivacyBudget{lambda, epsilon};
}

bool IsNonPrivateEpsilon(double epsilon, double lambda) {
  return IsVacuous(BudgetForEpsilon(epsilon, lambda));
}

absl::Status ValidateSimulationConfig(const SimulationConfig& c) {
  HDP_RETURN_IF_ERROR(Check(c.n >= 2, "n", "must be >= 2"));
  HDP_RETURN_IF_ERROR(Check(c.reps >= 0, "reps", "must be >= 0"));
  HDP_RETURN_IF_ERROR(Check(std::isfinite(c.true_mu), "true_mu",
                            "must be finite"));
  HDP_RETURN_IF_ERROR(Check(c.true_sigma > 0.0 && std::isfinite(c.true_sigma),
                            "true_sigma", "must be positive"));
  HDP_RETURN_IF_ERROR(Check(std::isfinite(c.lambda), "lambda",
                            "must be finite"));
  HDP_RETURN_IF_ERROR(
      Check(!c.epsilon_grid.empty(), "epsilon_grid", "must not be empty"));
  for (double eps : c.epsilon_grid) {
    if (c.lambda == kHdpLambda && std::isfinite(eps) && eps > kHdpCeiling) {
      return DomainError(absl::StrFormat(
          "field 'epsilon_grid': HDP epsilon %g exceeds 2", eps));
    }
    const absl::Status s = ValidateBudget(BudgetForEpsilon(eps, c.lambda));
    if (!s.ok()) {
      return DomainError(
          absl::StrCat("field 'epsilon_grid': ", s.message()));
    }
  }
  if (c.iterations.has_value()) {
    HDP_RETURN_IF_ERROR(Check(*c.iterations >= 1, "K", "must be >= 1"));
  }
  if (c.k_constant.has_value()) {
    HDP_RETURN_IF_ERROR(Check(*c.k_constant > 0.0, "k_constant",
                              "must be positive"));
  }
  HDP_RETURN_IF_ERROR(
      Check(c.learning_rate > 0.0 && std::isfinite(c.learning_rate), "eta",
            "must be positive"));
  HDP_RETURN_IF_ERROR(
      Check(c.sensitivity_exponent > 1.0 && c.sensitivity_exponent <= 2.0,
            "p", "must lie in (1, 2]"));
  if (c.weak_constant.has_value()) {
    HDP_RETURN_IF_ERROR(Check(*c.weak_constant > 0.0, "weak_constant",
                              "must be positive"));
  }
  HDP_RETURN_IF_ERROR(Check(c.hessian_floor > 0.0, "hessian_floor",
                            "must be positive"));
  HDP_RETURN_IF_ERROR(Check(c.sigma_min > 0.0, "sigma_min",
                            "must be positive"));
  HDP_RETURN_IF_ERROR(
      Check(!c.alpha_grid.empty(), "alpha_grid", "must not be empty"));
  for (double a : c.alpha_grid) {
    HDP_RETURN_IF_ERROR(
        Check(a >= 0.0 && a < 1.0, "alpha_grid", "entries must lie in [0, 1)"));
  }
  HDP_RETURN_IF_ERROR(Check(c.contamination_lo < c.contamination_hi &&
                                std::isfinite(c.contamination_lo) &&
                                std::isfinite(c.contamination_hi),
                            "contamination_lo",
                            "must be finite and below contamination_hi"));
  HDP_RETURN_IF_ERROR(Check(
      c.threshold_lo > 0.0 && c.threshold_lo < c.threshold_hi &&
          c.threshold_hi < 1.0,
      "threshold_lo", "need 0 < threshold_lo < threshold_hi < 1"));
  HDP_RETURN_IF_ERROR(Check(c.mc_multiplier >= 1, "mc_multiplier",
                            "must be >= 1"));
  if (c.bandwidth == BandwidthMode::kFixed) {
    HDP_RETURN_IF_ERROR(Check(
        c.bandwidth_value > 0.0 && std::isfinite(c.bandwidth_value),
        "bandwidth", "must be auto, per_rep or a positive number"));
  }
  if (c.truncation.has_value()) {
    HDP_RETURN_IF_ERROR(Check(*c.truncation > 0.0, "truncation",
                              "must be positive or none"));
  }
  HDP_RETURN_IF_ERROR(
      Check(c.level > 0.0 && c.level < 1.0, "level", "must lie in (0, 1)"));
  HDP_RETURN_IF_ERROR(Check(std::isfinite(c.start_mu), "start_mu",
                            "must be finite"));
  HDP_RETURN_IF_ERROR(Check(c.start_sigma > 0.0 && std::isfinite(c.start_sigma),
                            "start_sigma", "must be positive"));
  for (std::size_t n : c.n_grid) {
    HDP_RETURN_IF_ERROR(Check(n >= 2, "n_grid", "entries must be >= 2"));
  }
  if (!c.iterations.has_value()) {
    for (std::size_t n : c.n_grid.empty() ? std::vector<std::size_t>{c.n}
                                          : c.n_grid) {
      const absl::Status s = AutoIterations(c.algorithm, n, c.k_constant).status();
      if (!s.ok()) return DomainError(absl::StrCat("field 'K': ", s.message()));
    }
  }
  HDP_RETURN_IF_ERROR(Check(c.trace_reps >= 0, "trace_reps", "must be >= 0"));
  HDP_RETURN_IF_ERROR(Check(c.threads >= 0, "threads", "must be >= 0"));
  return absl::OkStatus();
}

absl::Status ApplyConfigValue(SimulationConfig& config, absl::string_view key,
                              absl::string_view value) {
  const auto& setters = Setters();
  auto it = setters.find(key);
  if (it == setters.end()) {
    return DomainError(absl::StrFormat("unknown key '%s'", key));
  }
  const absl::Status s = it->second(config, absl::StripAsciiWhitespace(value));
  if (!s.ok()) {
    return absl::Status(s.code(),
                        absl::StrCat("field '", key, "': ", s.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<SimulationConfig> ParseSimulationConfig(
    absl::string_view text, absl::string_view origin,
    const SimulationConfig& base) {
  std::vector<Line> lines;
  std::optional<Line> preset;
  int number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++number;
    const std::size_t hash = raw.find('#');
    if (hash != absl::string_view::npos) raw = raw.substr(0, hash);
    raw = absl::StripAsciiWhitespace(raw);
    if (raw.empty()) continue;
    const std::size_t eq = raw.find('=');
    if (eq == absl::string_view::npos) {
      return LineError(origin, number,
                       DomainError("expected 'key = value'"));
    }
    Line line{number,
              std::string(absl::StripAsciiWhitespace(raw.substr(0, eq))),
              std::string(absl::StripAsciiWhitespace(raw.substr(eq + 1)))};
    if (line.key.empty()) {
      return LineError(origin, number, DomainError("missing key"));
    }
    if (line.key == "preset") {
      if (preset.has_value()) {
        return LineError(origin, number,
                         DomainError("field 'preset': given twice"));
      }
      preset = line;
    } else {
      lines.push_back(std::move(line));
    }
  }
  SimulationConfig config = base;
  if (preset.has_value()) {
    auto p = Preset(preset->value);
    if (!p.ok()) {
      return LineError(origin, preset->number,
                       DomainError(absl::StrCat("field 'preset': ",
                                                p.status().message())));
    }
    config = *std::move(p);
  }
  for (const Line& line : lines) {
    const absl::Status s = ApplyConfigValue(config, line.key, line.value);
    if (!s.ok()) return LineError(origin, line.number, s);
  }
  const absl::Status s = ValidateSimulationConfig(config);
  if (!s.ok()) {
    return absl::Status(s.code(), absl::StrCat(origin, ": ", s.message()));
  }
  return config;
}

absl::StatusOr<SimulationConfig> LoadSimulationConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return IoError(absl::StrFormat("cannot open config '%s'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return IoError(absl::StrFormat("error reading '%s'", path));
  return ParseSimulationConfig(buffer.str(), path);
}

std::string FormatSimulationConfig(const SimulationConfig& c) {
  std::string out;
  auto add = [&out](absl::string_view key, const std::string& value) {
    absl::StrAppend(&out, key, " = ", value, "\n");
  };
  add("name", c.name);
  add("n", absl::StrCat(c.n));
  add("reps", absl::StrCat(c.reps));
  add("true_mu", FormatDouble(c.true_mu));
  add("true_sigma", FormatDouble(c.true_sigma));
  add("epsilon_grid", FormatDoubleList(c.epsilon_grid));
  add("lambda", FormatDouble(c.lambda));
  add("algo", AlgorithmName(c.algorithm));
  add("K", c.iterations.has_value() ? absl::StrCat(*c.iterations) : "auto");
  add("k_constant",
      c.k_constant.has_value() ? FormatDouble(*c.k_constant) : "default");
  add("eta", FormatDouble(c.learning_rate));
  add("p", FormatDouble(c.sensitivity_exponent));
  add("sensitivity",
      c.regime == SensitivityRegime::kSharp ? "sharp" : "weak");
  add("weak_constant",
      c.weak_constant.has_value() ? FormatDouble(*c.weak_constant) : "model");
  add("hessian_floor", FormatDouble(c.hessian_floor));
  add("sigma_min", FormatDouble(c.sigma_min));
  add("seed", absl::StrCat(c.seed));
  add("alpha_grid", FormatDoubleList(c.alpha_grid));
  add("contamination_lo", FormatDouble(c.contamination_lo));
  add("contamination_hi", FormatDouble(c.contamination_hi));
  add("threshold", c.threshold ? "on" : "off");
  add("threshold_lo", FormatDouble(c.threshold_lo));
  add("threshold_hi", FormatDouble(c.threshold_hi));
  add("mc_multiplier", absl::StrCat(c.mc_multiplier));
  switch (c.bandwidth) {
    case BandwidthMode::kAuto:
      add("bandwidth", "auto");
      break;
    case BandwidthMode::kPerReplication:
      add("bandwidth", "per_rep");
      break;
    case BandwidthMode::kFixed:
      add("bandwidth", FormatDouble(c.bandwidth_value));
      break;
  }
  add("truncation",
      c.truncation.has_value() ? FormatDouble(*c.truncation) : "none");
  add("level", FormatDouble(c.level));
  add("correction", CorrectionModeName(c.correction));
  add("cov_mode", CovarianceModeName(c.cov_mode));
  add("start", StartModeName(c.start));
  add("start_mu", FormatDouble(c.start_mu));
  add("start_sigma", FormatDouble(c.start_sigma));
  add("include_mle", c.include_mle ? "on" : "off");
  add("n_grid", c.n_grid.empty() ? "none" : absl::StrJoin(c.n_grid, ","));
  add("trace_reps", absl::StrCat(c.trace_reps));
  add("threads", absl::StrCat(c.threads));
  return out;
}

std::vector<std::string> PresetNames() {
  std::vector<std::string> names;
  for (const SimulationConfig& c : AllPresets()) names.push_back(c.name);
  return names;
}

absl::StatusOr<SimulationConfig> Preset(absl::string_view name) {
  for (const SimulationConfig& c : AllPresets()) {
    if (c.name == name) return c;
  }
  return DomainError(absl::StrFormat("unknown preset '%s' (known: %s)", name,
                                     absl::StrJoin(PresetNames(), ", ")));
}

}  // namespace hdp
