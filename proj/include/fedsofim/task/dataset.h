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
#ifndef FEDSOFIM_TASK_DATASET_H_
#define FEDSOFIM_TASK_DATASET_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace fedsofim {

// One record: frozen-extractor features and an integer class id.
struct Example {
  std::vector<double> features;
  int label = 0;

  friend bool operator==(const Example&, const Example&) = default;
  friend auto operator<=>(const Example&, const Example&) = default;
};

// The private records held by one client.
struct ClientDataset {
  std::vector<Example> examples;

  int size() const { return static_cast<int>(examples.size()); }
};

// Seeded uniform shuffle split into `num_clients` shards whose sizes differ by
// at most one. The first (|examples| mod num_clients) shards get the extra
// record.
absl::StatusOr<std::vector<ClientDataset>> PartitionIid(
    std::span<const Example> examples, int num_clients, uint64_t seed);

}  // namespace fedsofim

#endif  // FEDSOFIM_TASK_DATASET_H_
