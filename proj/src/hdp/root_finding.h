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

#ifndef HDP_ROOT_FINDING_H_
#define HDP_ROOT_FINDING_H_

#include <functional>

#include "absl/status/statusor.h"

namespace hdp {

struct BisectionOptions {
  // Accepted residual |f(x) - target|.
  double abs_tolerance = 1e-12;
  int max_iterations = 200;
  // Number of times the upper end may be doubled to bracket the target.
  int max_expansions = 0;
};

// Solves f(x) = target for a monotone (either direction) f on [lo, hi].
// The bracket is refined until it stops shrinking in floating point or the
// iteration cap is reached; the endpoint with the smaller residual wins.
// Fails with a numerical error when the target is not bracketed or the final
// residual exceeds abs_tolerance.
absl::StatusOr<double> SolveMonotone(const std::function<double(double)>& f,
                                     double target, double lo, double hi,
                                     const BisectionOptions& options = {});

}  // namespace hdp

#endif  // HDP_ROOT_FINDING_H_
