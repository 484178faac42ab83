/*
 * Copyright 2026 The FedSOFIM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "fedsofim/accountant/normal.h"

#include <cmath>

#include "gtest/gtest.h"

namespace fedsofim {
namespace {

// Reference values computed with 40-digit arbitrary-precision arithmetic.
struct Reference {
  double x;
  double cdf;
  double log_cdf;
};

constexpr Reference kReferences[] = {
    {-40.0, 0.0, -804.60844201375378817},
    {-20.0, 2.7536241186062336951e-89, -203.91715537109726394},
    {-10.0, 7.619853024160526066e-24, -53.231285150512470578},
    {-8.5, 9.4795348222033183542e-18, -39.197396428217669289},
    {-8.0, 6.2209605742717841235e-16, -35.013437159914549896},
    {-5.0, 2.8665157187919391167e-7, -15.064998393988725736},
    {-1.0, 0.15865525393145705141, -1.8410216450092635058},
    {0.0, 0.5, -0.69314718055994530942},
    {0.5, 0.69146246127401310364, -0.36894641528865639307},
    {1.0, 0.84134474606854294859, -0.17275377902344988953},
    {3.0, 0.99865010196836990547, -0.0013508099647481937988},
    {8.0, 0.9999999999999993779, -6.2209605742717860585e-16},
};

TEST(NormalCdfTest, MatchesHighPrecisionReference) {
  for (const Reference& r : kReferences) {
    if (r.cdf == 0.0) continue;  // Below the double range.
    EXPECT_NEAR(NormalCdf(r.x), r.cdf, 1e-13 * r.cdf) << "x = " << r.x;
  }
}

TEST(NormalCdfTest, SymmetryAndLimits) {
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    EXPECT_NEAR(NormalCdf(x) + NormalCdf(-x), 1.0, 1e-15);
  }
  EXPECT_EQ(NormalCdf(-INFINITY), 0.0);
  EXPECT_EQ(NormalCdf(INFINITY), 1.0);
  EXPECT_NEAR(NormalCdf(1.0) - NormalCdf(-1.0), 0.682689492137085897, 1e-15);
}

TEST(LogNormalCdfTest, MatchesHighPrecisionReference) {
  for (const Reference& r : kReferences) {
    EXPECT_NEAR(LogNormalCdf(r.x), r.log_cdf, 1e-12 * std::abs(r.log_cdf))
        << "x = " << r.x;
  }
}

TEST(LogNormalCdfTest, FiniteFarIntoTheTail) {
  const double far = LogNormalCdf(-1e4);
  EXPECT_TRUE(std::isfinite(far));
  EXPECT_NEAR(far, -0.5e8 - std::log(1e4) - 0.5 * std::log(2.0 * M_PI), 1e-6);
}

TEST(LogNormalCdfTest, ContinuousAcrossTheSeriesSwitch) {
  for (double x = -8.2; x <= -7.8; x += 0.01) {
    EXPECT_NEAR(LogNormalCdf(x), std::log(NormalCdf(x)),
                1e-12 * std::abs(LogNormalCdf(x)));
  }
}

TEST(LogNormalCdfTest, Monotone) {
  double previous = LogNormalCdf(-200.0);
  for (double x = -199.5; x <= 10.0; x += 0.5) {
    const double current = LogNormalCdf(x);
    ASSERT_GE(current, previous) << "x = " << x;
    previous = current;
  }
}

}  // namespace
}  // namespace fedsofim
