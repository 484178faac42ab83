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
#ifndef FEDSOFIM_TASK_FEATURE_FILE_H_
#define FEDSOFIM_TASK_FEATURE_FILE_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedsofim/task/dataset.h"

namespace fedsofim {

// Frozen-feature text format:
//
//   dim=<int>,classes=<int>
//   label,f1,f2,...,fdim
//   ...
struct FeatureFileMetadata {
  int feature_dim = 0;
  int num_classes = 0;
  int num_examples = 0;
  std::vector<int> class_counts;
};

struct FeatureFile {
  std::vector<Example> examples;
  FeatureFileMetadata metadata;
};

absl::StatusOr<FeatureFile> ParseFrozenFeatures(absl::string_view text);
absl::StatusOr<FeatureFile> LoadFrozenFeatures(const std::string& path);

// Values are written with 17 significant digits so that a read-back is exact.
std::string FormatFrozenFeatures(std::span<const Example> examples,
                                 int feature_dim, int num_classes);
absl::Status WriteFrozenFeatures(const std::string& path,
                                 std::span<const Example> examples,
                                 int feature_dim, int num_classes);

}  // namespace fedsofim

#endif  // FEDSOFIM_TASK_FEATURE_FILE_H_
