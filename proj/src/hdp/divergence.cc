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

#include "hdp/divergence.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "hdp/status.h"

namespace hdp {
namespace {

absl::Status CheckScale(double scale, const char* name) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return DomainError(
        absl::StrFormat("%s must be positive and finite, got %g", name, scale));
  }
  return absl::OkStatus();
}

absl::Status CheckNorm(double norm) {
  if (!(norm >= 0.0)) {
    return DomainError(
        absl::StrFormat("distance must be non-negative, got %g", norm));
  }
  return absl::OkStatus();
}

absl::Status CheckOrder(double lambda) {
  if (!std::isfinite(lambda)) {
    return DomainError("divergence order must be finite");
  }
  return absl::OkStatus();
}

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// expm1(s a) / s with the s -> 0 limit a.
double Expm1Ratio(double s, double a) {
  if (s == 0.0) return a;
  return std::expm1(s * a) / s;
}

}  // namespace

absl::StatusOr<double> GaussianPowerDivergence(double v_norm2, double sigma,
                                               double lambda) {
  HDP_RETURN_IF_ERROR(CheckScale(sigma, "sigma"));
  HDP_RETURN_IF_ERROR(CheckNorm(v_norm2));
  HDP_RETURN_IF_ERROR(CheckOrder(lambda));
  const double x = v_norm2 * v_norm2 / (2.0 * sigma * sigma);
  if (IsKlBranch(lambda)) return x;
  const double t = PowerProduct(lambda);
  return std::expm1(t * x) / t;
}

absl::StatusOr<double> HellingerSqGaussians(double v_norm2, double sigma) {
  HDP_RETURN_IF_ERROR(CheckScale(sigma, "sigma"));
  HDP_RETURN_IF_ERROR(CheckNorm(v_norm2));
  return -2.0 * std::expm1(-v_norm2 * v_norm2 / (8.0 * sigma * sigma));
}

absl::StatusOr<double> LaplacePowerDivergenceExact(absl::Span<const double> v,
                                                   double b, double lambda) {
  HDP_RETURN_IF_ERROR(CheckScale(b, "b"));
  HDP_RETURN_IF_ERROR(CheckOrder(lambda));
  for (double vi : v) {
    if (!std::isfinite(vi)) return DomainError("location shift must be finite");
  }
  if (IsKlBranch(lambda)) {
    double sum = 0.0;
    for (double vi : v) {
      const double a = std::abs(vi) / b;
      sum += a + std::expm1(-a);
    }
    return sum;
  }
  const double s = 2.0 * lambda + 1.0;
  if (s == 0.0) {
    double log_prod = 0.0;
    for (double vi : v) {
      const double a = std::abs(vi) / b;
      log_prod += -0.5 * a + std::log1p(0.5 * a);
    }
    return -4.0 * std::expm1(log_prod);
  }
  // Per coordinate 0.5 [e^{lambda a}(1 + 1/s) + e^{-(lambda+1) a}(1 - 1/s)],
  // rewritten as 0.5 [e^{lambda a} + e^{-(lambda+1) a}(1 + expm1(s a)/s)] so
  // no cancellation occurs near s = 0.
  double log_prod = 0.0;
  for (double vi : v) {
    const double a = std::abs(vi) / b;
    const double term =
        0.5 * (std::exp(lambda * a) +
               std::exp(-(lambda + 1.0) * a) * (1.0 + Expm1Ratio(s, a)));
    log_prod += std::log(term);
  }
  return std::expm1(log_prod) / PowerProduct(lambda);
}

absl::StatusOr<double> LaplacePowerDivergenceBound(double v_norm1, double b,
                                                   double lambda) {
  HDP_RETURN_IF_ERROR(CheckScale(b, "b"));
  HDP_RETURN_IF_ERROR(CheckNorm(v_norm1));
  HDP_RETURN_IF_ERROR(CheckOrder(lambda));
  if (IsKlBranch(lambda)) return v_norm1 / b;
  const double t = PowerProduct(lambda);
  return std::expm1(Sign(lambda) * (lambda + 1.0) * v_norm1 / b) / t;
}

}  // namespace hdp
