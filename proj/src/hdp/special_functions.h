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

#ifndef HDP_SPECIAL_FUNCTIONS_H_
#define HDP_SPECIAL_FUNCTIONS_H_

#include "absl/status/statusor.h"

namespace hdp {

// Standard normal cumulative distribution function.
double NormalCdf(double x);

// Standard normal quantile. Rational approximation refined by one Halley
// step against NormalCdf; absolute error below 1e-9 on (0, 1).
// Returns -inf at p = 0 and +inf at p = 1.
absl::StatusOr<double> NormalQuantile(double p);

// Two-sided critical value z_{1-(1-level)/2} for a confidence level in (0,1).
absl::StatusOr<double> TwoSidedCriticalValue(double level);

}  // namespace hdp

#endif  // HDP_SPECIAL_FUNCTIONS_H_
