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
#include <vector>

#include "gtest/gtest.h"

namespace hdp {
namespace {

std::vector<double> Draw(RandomStream rng, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(rng.StandardNormal());
  return out;
}

TEST(RandomStreamTest, SamePathSameSequence) {
  EXPECT_EQ(Draw(RandomStream({7, 1, 2}), 100), Draw(RandomStream({7, 1, 2}), 100));
  RandomStream base({7});
  EXPECT_EQ(Draw(base.Derive({1, 2}), 50), Draw(RandomStream({7, 1, 2}), 50));
  EXPECT_EQ(Draw(base.Derive(1).Derive(2), 50), Draw(RandomStream({7, 1, 2}), 50));
}

TEST(RandomStreamTest, DistinctPathsDiffer) {
  EXPECT_NE(Draw(RandomStream({7, 1}), 10), Draw(RandomStream({7, 2}), 10));
  EXPECT_NE(Draw(RandomStream({7}), 10), Draw(RandomStream({7, 0}), 10));
  EXPECT_NE(Draw(RandomStream({1, 2}), 10), Draw(RandomStream({2, 1}), 10));
  EXPECT_NE(Draw(RandomStream({1ull << 32}), 10), Draw(RandomStream({1}), 10));
}

// Deriving reads only the path, never the parent's state.
TEST(RandomStreamTest, DeriveIgnoresParentState) {
  RandomStream a({3});
  RandomStream b({3});
  for (int i = 0; i < 17; ++i) a.Uniform();
  EXPECT_EQ(Draw(a.Derive(5), 20), Draw(b.Derive(5), 20));
  EXPECT_EQ(a.Derive(5).path(), (std::vector<std::uint64_t>{3, 5}));
}

TEST(RandomStreamTest, UniformMoments) {
  RandomStream rng({11});
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum2 / n - mean * mean, 1.0 / 12.0, 2e-3);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.Uniform(9.34, 10.15);
    ASSERT_GE(x, 9.34);
    ASSERT_LT(x, 10.15);
  }
}

TEST(RandomStreamTest, NormalMoments) {
  RandomStream rng({12});
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  double sum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.StandardNormal();
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(sum4 / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(RandomStreamTest, UniformIndexCoversRange) {
  RandomStream rng({13});
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = rng.UniformIndex(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5.0 * std::sqrt(n / 7.0));
  EXPECT_EQ(rng.UniformIndex(1), 0u);
}

}  // namespace
}  // namespace hdp
