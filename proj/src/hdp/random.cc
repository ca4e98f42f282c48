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

#include "hdp/random.h"

#include <cmath>
#include <utility>

namespace hdp {
namespace {

std::mt19937_64 SeedEngine(const std::vector<std::uint64_t>& path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * path.size() + 1);
  // Length prefix keeps (a) and (a, 0) distinct.
  words.push_back(static_cast<std::uint32_t>(path.size()));
  for (std::uint64_t v : path) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::vector<std::uint64_t> path)
    : path_(std::move(path)), engine_(SeedEngine(path_)) {}

RandomStream RandomStream::Derive(std::uint64_t tag) const {
  std::vector<std::uint64_t> child = path_;
  child.push_back(tag);
  return RandomStream(std::move(child));
}

RandomStream RandomStream::Derive(
    std::initializer_list<std::uint64_t> tags) const {
  std::vector<std::uint64_t> child = path_;
  child.insert(child.end(), tags.begin(), tags.end());
  return RandomStream(std::move(child));
}

double RandomStream::Uniform() {
  const double u = std::generate_canonical<double, 53>(engine_);
  // Some standard libraries can round up to exactly 1.
  return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double RandomStream::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform();
}

std::size_t RandomStream::UniformIndex(std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

double RandomStream::StandardNormal() { return normal_(engine_); }

}  // namespace hdp
