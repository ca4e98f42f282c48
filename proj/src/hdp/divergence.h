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

// Closed-form power divergences between shifted noise distributions.
//
// The power divergence of order lambda between densities p1 and p2 is
//   D_lambda = (E_{p2}[(p1/p2)^{lambda+1}] - 1) / (lambda (lambda + 1)),
// with the Kullback-Leibler limits at lambda in {0, -1}. D_{-1/2} is twice
// the squared Hellinger distance.

#ifndef HDP_DIVERGENCE_H_
#define HDP_DIVERGENCE_H_

#include "absl/status/statusor.h"
#include "absl/types/span.h"

namespace hdp {

// |lambda (lambda + 1)| below this threshold selects the KL branch.
inline constexpr double kKlBranchTolerance = 1e-12;

// Returns lambda (lambda + 1).
inline double PowerProduct(double lambda) { return lambda * (lambda + 1.0); }

inline bool IsKlBranch(double lambda) {
  const double t = PowerProduct(lambda);
  return t < kKlBranchTolerance && t > -kKlBranchTolerance;
}

// Power divergence between N(a, sigma^2 I) and N(a + v, sigma^2 I), where
// v_norm2 = ||v||_2.
absl::StatusOr<double> GaussianPowerDivergence(double v_norm2, double sigma,
                                               double lambda);

// Squared Hellinger distance 2(1 - exp(-||v||^2 / (8 sigma^2))) between the
// same pair. Lies in [0, 2).
absl::StatusOr<double> HellingerSqGaussians(double v_norm2, double sigma);

// Exact power divergence between product Laplace densities with common scale
// b and location difference v.
absl::StatusOr<double> LaplacePowerDivergenceExact(absl::Span<const double> v,
                                                   double b, double lambda);

// Upper bound (1/t) expm1(sign(lambda)(lambda+1) ||v||_1 / b) on the Laplace
// power divergence, with the ||v||_1 / b bound on the KL branch.
absl::StatusOr<double> LaplacePowerDivergenceBound(double v_norm1, double b,
                                                   double lambda);

}  // namespace hdp

#endif  // HDP_DIVERGENCE_H_
