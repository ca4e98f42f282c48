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

#ifndef HDP_RANDOM_H_
#define HDP_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hdp {

// Deterministic random stream addressed by a path of integers, e.g.
// (seed, cell, replication, purpose). Streams with different paths are
// seeded independently through std::seed_seq; Derive() appends to the path,
// so substreams never depend on how many draws the parent has made.
class RandomStream {
 public:
  explicit RandomStream(std::vector<std::uint64_t> path);
  RandomStream(std::initializer_list<std::uint64_t> path)
      : RandomStream(std::vector<std::uint64_t>(path)) {}

  RandomStream Derive(std::uint64_t tag) const;
  RandomStream Derive(std::initializer_list<std::uint64_t> tags) const;

  // Uniform on [0, 1).
  double Uniform();
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi);
  // Uniform integer on {0, ..., n - 1}; n >= 1.
  std::size_t UniformIndex(std::size_t n);
  double StandardNormal();

  const std::vector<std::uint64_t>& path() const { return path_; }

 private:
  std::vector<std::uint64_t> path_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// Purposes used as the last path component by the simulation harness.
enum class StreamPurpose : std::uint64_t {
  kData = 1,
  kMonteCarlo = 2,
  kOptimizerNoise = 3,
  kCovarianceNoise = 4,
};

}  // namespace hdp

#endif  // HDP_RANDOM_H_
