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
#include "fedsofim/task/dataset.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"

namespace fedsofim {

absl::StatusOr<std::vector<ClientDataset>> PartitionIid(
    std::span<const Example> examples, int num_clients, uint64_t seed) {
  if (num_clients < 1) {
    return absl::InvalidArgumentError("num_clients must be at least 1");
  }
  if (examples.size() < static_cast<size_t>(num_clients)) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot split ", examples.size(), " examples across ",
                     num_clients, " clients"));
  }
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::mt19937_64 engine(seed);
  std::shuffle(order.begin(), order.end(), engine);

  const size_t base = examples.size() / num_clients;
  const size_t extra = examples.size() % num_clients;
  std::vector<ClientDataset> shards(num_clients);
  size_t next = 0;
  for (int i = 0; i < num_clients; ++i) {
    const size_t count = base + (static_cast<size_t>(i) < extra ? 1 : 0);
    shards[i].examples.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      shards[i].examples.push_back(examples[order[next++]]);
    }
  }
  return shards;
}

}  // namespace fedsofim
