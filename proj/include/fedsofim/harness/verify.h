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
#ifndef FEDSOFIM_HARNESS_VERIFY_H_
#define FEDSOFIM_HARNESS_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace fedsofim {

enum class VerifySuite {
  kShermanMorrison,
  kClipNorm,
  kMomentumMoment,
  kVarianceReduction,
  kNoiseFloor,
  kDescent,
  kConvergenceFloor,
  kComplexityScaling,
  kAccountant,
};

const std::vector<VerifySuite>& AllVerifySuites();
absl::string_view VerifySuiteName(VerifySuite suite);
// Accepts the names printed by VerifySuiteName in any letter case.
absl::StatusOr<VerifySuite> ParseVerifySuite(absl::string_view name);

// One measured quantity against its bound. `margin` is the signed slack in
// the direction of the check, so a passing check has margin >= 0.
struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool passed = false;
};

struct VerifyReport {
  VerifySuite suite = VerifySuite::kShermanMorrison;
  std::vector<VerifyCheck> checks;
  // Estimates and settings the checks depend on, as `key=value` text.
  std::vector<std::string> notes;

  bool passed() const;
};

// Runs one theory suite. Failed checks are report content, not errors.
VerifyReport VerifyTheory(VerifySuite suite, uint64_t seed);

std::string FormatVerifyReport(const VerifyReport& report);

}  // namespace fedsofim

#endif  // FEDSOFIM_HARNESS_VERIFY_H_
