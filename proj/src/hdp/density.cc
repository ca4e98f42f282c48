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

#include "hdp/density.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "hdp/status.h"

namespace hdp {

double EpanechnikovKernel(double u) {
  return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

double SampleEpanechnikov(RandomStream& rng) {
  const double u1 = rng.Uniform(-1.0, 1.0);
  const double u2 = rng.Uniform(-1.0, 1.0);
  const double u3 = rng.Uniform(-1.0, 1.0);
  if (std::abs(u3) >= std::abs(u2) && std::abs(u3) >= std::abs(u1)) return u2;
  return u3;
}

double SortedQuantile(absl::Span<const double> sorted, double q) {
  const double h = (sorted.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

absl::StatusOr<double> SilvermanBandwidth(absl::Span<const double> data) {
  const std::size_t n = data.size();
  if (n < 2) {
    return DomainError(
        absl::StrFormat("bandwidth needs at least 2 points, got %d", n));
  }
  for (double x : data) {
    if (!std::isfinite(x)) return DomainError("data contain non-finite values");
  }
  const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1));
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr =
      SortedQuantile(sorted, 0.75) - SortedQuantile(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = std::max(sd, iqr / 1.34);
  if (!(spread > 0.0)) {
    return DomainError("bandwidth undefined for data with zero spread");
  }
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

absl::StatusOr<KdeEstimate> KdeEstimate::Create(
    std::vector<double> data, double bandwidth,
    std::optional<double> truncation) {
  if (data.empty()) return DomainError("density estimate needs data");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    return DomainError(absl::StrFormat(
        "bandwidth must be positive and finite, got %g", bandwidth));
  }
  if (truncation.has_value() && !(*truncation > 0.0)) {
    return DomainError(absl::StrFormat(
        "truncation bound must be positive, got %g", *truncation));
  }
  const std::size_t n = data.size();
  std::vector<double> active;
  active.reserve(n);
  for (double x : data) {
    if (!std::isfinite(x)) return DomainError("data contain non-finite values");
    if (!truncation.has_value() || std::abs(x) < *truncation) {
      active.push_back(x);
    }
  }
  std::sort(active.begin(), active.end());
  return KdeEstimate(n, std::move(active), bandwidth, truncation);
}

double KdeEstimate::Eval(double x) const {
  const double c = bandwidth_;
  auto it = std::lower_bound(active_.begin(), active_.end(), x - c);
  double sum = 0.0;
  for (; it != active_.end() && *it <= x + c; ++it) {
    sum += EpanechnikovKernel((x - *it) / c);
  }
  return sum / (static_cast<double>(n_) * c);
}

absl::StatusOr<std::vector<double>> KdeEstimate::Sample(
    std::size_t count, RandomStream& rng) const {
  if (active_.empty()) {
    return DomainError("truncation window excludes every data point");
  }
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double center = active_[rng.UniformIndex(active_.size())];
    out[i] = center + bandwidth_ * SampleEpanechnikov(rng);
  }
  return out;
}

absl::StatusOr<std::vector<double>> ReadDataFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return IoError(absl::StrFormat("cannot open data file '%s'", path));
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    double value;
    if (!absl::SimpleAtod(text, &value) || !std::isfinite(value)) {
      return DomainError(absl::StrFormat("%s:%d: not a finite number: '%s'",
                                         path, line_no, text));
    }
    values.push_back(value);
  }
  if (in.bad()) return IoError(absl::StrFormat("error reading '%s'", path));
  return values;
}

}  // namespace hdp
