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

#include "hdp/root_finding.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "hdp/status.h"

namespace hdp {

absl::StatusOr<double> SolveMonotone(const std::function<double(double)>& f,
                                     double target, double lo, double hi,
                                     const BisectionOptions& options) {
  if (!(lo <= hi)) {
    return DomainError(absl::StrFormat("invalid bracket [%g, %g]", lo, hi));
  }
  double f_lo = f(lo) - target;
  double f_hi = f(hi) - target;
  for (int i = 0; i < options.max_expansions && f_lo * f_hi > 0.0; ++i) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi) - target;
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (!(f_lo * f_hi < 0.0)) {
    return NumericalError(absl::StrFormat(
        "target %.17g not bracketed by [%.17g, %.17g]", target, lo, hi));
  }
  for (int i = 0; i < options.max_iterations; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid) - target;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double best = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  const double residual = std::min(std::abs(f_lo), std::abs(f_hi));
  if (!(residual <= options.abs_tolerance)) {
    return NumericalError(absl::StrFormat(
        "bisection residual %.3g exceeds tolerance %.3g", residual,
        options.abs_tolerance));
  }
  return best;
}

}  // namespace hdp
