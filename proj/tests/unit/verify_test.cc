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
#include "fedsofim/harness/verify.h"

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace fedsofim {
namespace {

using ::testing::HasSubstr;

TEST(VerifySuiteNameTest, RoundTripsAndIgnoresCase) {
  EXPECT_EQ(AllVerifySuites().size(), 9u);
  for (VerifySuite suite : AllVerifySuites()) {
    const std::string name(VerifySuiteName(suite));
    EXPECT_EQ(ParseVerifySuite(name).value(), suite);
  }
  EXPECT_EQ(ParseVerifySuite("sherman_morrison").value(),
            VerifySuite::kShermanMorrison);
  EXPECT_FALSE(ParseVerifySuite("NEWTON").ok());
}

TEST(VerifyReportTest, PassesOnlyWhenEveryCheckPasses) {
  VerifyReport report;
  // A suite that measured nothing has not shown anything.
  EXPECT_FALSE(report.passed());
  report.checks.push_back({"a", 1.0, 2.0, 1.0, true});
  EXPECT_TRUE(report.passed());
  report.checks.push_back({"b", 3.0, 2.0, -1.0, false});
  EXPECT_FALSE(report.passed());
  const std::string text = FormatVerifyReport(report);
  EXPECT_THAT(text, HasSubstr("check b "));
  EXPECT_THAT(text, HasSubstr("FAIL"));
  EXPECT_THAT(text, HasSubstr("result=FAIL"));
}

// The timing suite is exercised by the acceptance run, where it has the
// machine to itself.
class VerifySuiteTest : public ::testing::TestWithParam<VerifySuite> {};

TEST_P(VerifySuiteTest, Passes) {
  const VerifyReport report = VerifyTheory(GetParam(), 1);
  EXPECT_EQ(report.suite, GetParam());
  EXPECT_FALSE(report.checks.empty());
  EXPECT_TRUE(report.passed()) << FormatVerifyReport(report);
}

INSTANTIATE_TEST_SUITE_P(
    Suites, VerifySuiteTest,
    ::testing::Values(VerifySuite::kShermanMorrison, VerifySuite::kClipNorm,
                      VerifySuite::kMomentumMoment,
                      VerifySuite::kVarianceReduction,
                      VerifySuite::kNoiseFloor, VerifySuite::kDescent,
                      VerifySuite::kConvergenceFloor,
                      VerifySuite::kAccountant),
    [](const ::testing::TestParamInfo<VerifySuite>& info) {
      std::string name(VerifySuiteName(info.param));
      std::string camel;
      bool upper = true;
      for (char c : name) {
        if (c == '_') {
          upper = true;
          continue;
        }
        camel.push_back(upper ? c : static_cast<char>(c - 'A' + 'a'));
        upper = false;
      }
      return camel;
    });

}  // namespace
}  // namespace fedsofim
