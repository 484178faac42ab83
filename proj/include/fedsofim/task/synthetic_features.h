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
#ifndef FEDSOFIM_TASK_SYNTHETIC_FEATURES_H_
#define FEDSOFIM_TASK_SYNTHETIC_FEATURES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fedsofim/task/dataset.h"

namespace fedsofim {

// Gaussian class mixture standing in for frozen-extractor outputs. Each
// feature axis j is rescaled by condition_number^(-j / (2 (dim - 1))), so the
// per-axis variances span a factor of `condition_number`.
struct SyntheticFeatureSpec {
  int num_examples = 2000;
  int feature_dim = 16;
  int num_classes = 10;
  double condition_number = 100.0;
  // Class means are drawn N(0, class_separation^2 I) before rescaling.
  double class_separation = 1.0;
  // Norm of a common shift added to every record after rescaling.
  double feature_offset = 0.0;
  // Overall multiplier applied last.
  double feature_scale = 1.0;
  uint64_t seed = 0;
};

absl::StatusOr<std::vector<Example>> MakeSyntheticFeatures(
    const SyntheticFeatureSpec& spec);

// Ratio of the extreme eigenvalues of the bias-augmented second moment
// E[[x; 1][x; 1]^T], the conditioning the linear head inherits.
double FeatureConditionNumber(std::span<const Example> examples);

}  // namespace fedsofim

#endif  // FEDSOFIM_TASK_SYNTHETIC_FEATURES_H_
