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

#include "hdp/special_functions.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "test_util.h"

namespace hdp {
namespace {

using ::hdp::testing::CodeOf;
using ::hdp::testing::Unwrap;

TEST(NormalCdfTest, KnownValues) {
  EXPECT_DOUBLE_EQ(NormalCdf(0.0), 0.5);
  EXPECT_NEAR(NormalCdf(1.0), 0.8413447460685429, 1e-15);
  EXPECT_NEAR(NormalCdf(-1.959963984540054), 0.025, 1e-15);
  EXPECT_NEAR(NormalCdf(-8.0), 6.22096057427178e-16, 1e-28);
}

TEST(NormalCdfTest, Symmetry) {
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    EXPECT_NEAR(NormalCdf(x) + NormalCdf(-x), 1.0, 1e-15) << x;
  }
}

TEST(NormalQuantileTest, CriticalValue975) {
  EXPECT_NEAR(Unwrap(NormalQuantile(0.975)), 1.959964, 1e-6);
  EXPECT_NEAR(Unwrap(NormalQuantile(0.975)), 1.959963984540054, 1e-12);
  EXPECT_NEAR(Unwrap(TwoSidedCriticalValue(0.95)), 1.959963984540054, 1e-12);
}

TEST(NormalQuantileTest, KnownValues) {
  EXPECT_DOUBLE_EQ(Unwrap(NormalQuantile(0.5)), 0.0);
  EXPECT_NEAR(Unwrap(NormalQuantile(0.6)), 0.2533471031357997, 1e-12);
  EXPECT_NEAR(Unwrap(NormalQuantile(0.75)), 0.6744897501960817, 1e-12);
  EXPECT_NEAR(Unwrap(NormalQuantile(0.007)), -2.457263390205863, 1e-10);
  EXPECT_NEAR(Unwrap(NormalQuantile(0.995)), 2.575829303548901, 1e-10);
}

// Round trip through the erfc-based CDF, the independent definition.
TEST(NormalQuantileTest, InvertsCdfOnGrid) {
  for (double p = 1e-12; p < 1.0; p = p < 0.01 ? p * 3.7 : p + 0.0137) {
    const double x = Unwrap(NormalQuantile(p));
    const double tail = p < 0.5 ? NormalCdf(x) : 1.0 - NormalCdf(x);
    const double target = p < 0.5 ? p : 1.0 - p;
    EXPECT_NEAR(tail / target, 1.0, 1e-9) << p;
  }
}

TEST(NormalQuantileTest, Monotone) {
  double previous = -std::numeric_limits<double>::infinity();
  for (double p = 0.001; p < 1.0; p += 0.001) {
    const double x = Unwrap(NormalQuantile(p));
    EXPECT_GT(x, previous);
    previous = x;
  }
}

TEST(NormalQuantileTest, Endpoints) {
  EXPECT_EQ(Unwrap(NormalQuantile(0.0)), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(Unwrap(NormalQuantile(1.0)), std::numeric_limits<double>::infinity());
}

TEST(NormalQuantileTest, RejectsOutsideUnitInterval) {
  EXPECT_EQ(CodeOf(NormalQuantile(-0.1)), absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(NormalQuantile(1.1)), absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(NormalQuantile(std::nan(""))),
            absl::StatusCode::kInvalidArgument);
}

TEST(TwoSidedCriticalValueTest, RejectsDegenerateLevels) {
  EXPECT_EQ(CodeOf(TwoSidedCriticalValue(0.0)),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(CodeOf(TwoSidedCriticalValue(1.0)),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace hdp
