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

#ifndef HDP_DENSITY_H_
#define HDP_DENSITY_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "hdp/random.h"

namespace hdp {

// Epanechnikov kernel 3/4 (1 - u^2) on [-1, 1].
double EpanechnikovKernel(double u);

// Draw from the Epanechnikov density: of three iid U(-1, 1) values, return
// the second when the third has the largest magnitude, else the third.
double SampleEpanechnikov(RandomStream& rng);

// Type-7 sample quantile (linear interpolation between order statistics) of
// already sorted data.
double SortedQuantile(absl::Span<const double> sorted, double q);

// 0.9 min(sd, IQR / 1.34) n^{-1/5}; sd uses the n - 1 denominator. When one
// spread measure is zero the other is used.
absl::StatusOr<double> SilvermanBandwidth(absl::Span<const double> data);

// Kernel density estimate
//   g_n(x) = (1 / (n c)) sum_{i : X_i in B} K((x - X_i) / c),
// where B = (-b, b) when a truncation bound b is set and the real line
// otherwise. The normalizer keeps the full n, so the estimate integrates to
// (#points in B) / n.
class KdeEstimate {
 public:
  static absl::StatusOr<KdeEstimate> Create(
      std::vector<double> data, double bandwidth,
      std::optional<double> truncation = std::nullopt);

  double Eval(double x) const;
  // Draws X_I + c xi with I uniform over the points in B.
  absl::StatusOr<std::vector<double>> Sample(std::size_t count,
                                             RandomStream& rng) const;

  std::size_t n() const { return n_; }
  std::size_t active_count() const { return active_.size(); }
  double bandwidth() const { return bandwidth_; }
  const std::optional<double>& truncation() const { return truncation_; }
  // Points inside B in increasing order.
  const std::vector<double>& active_points() const { return active_; }

 private:
  KdeEstimate(std::size_t n, std::vector<double> active, double bandwidth,
              std::optional<double> truncation)
      : n_(n),
        active_(std::move(active)),
        bandwidth_(bandwidth),
        truncation_(truncation) {}

  std::size_t n_;
  std::vector<double> active_;
  double bandwidth_;
  std::optional<double> truncation_;
};

// Reads one floating-point value per line. Blank lines and lines starting
// with '#' are skipped.
absl::StatusOr<std::vector<double>> ReadDataFile(const std::string& path);

}  // namespace hdp

#endif  // HDP_DENSITY_H_
