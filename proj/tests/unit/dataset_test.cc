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
#include <vector>

#include "gtest/gtest.h"

namespace fedsofim {
namespace {

// Record i carries i as its only feature so shards can be traced back.
std::vector<Example> Numbered(int count) {
  std::vector<Example> out(count);
  for (int i = 0; i < count; ++i) {
    out[i].features = {static_cast<double>(i)};
    out[i].label = i % 3;
  }
  return out;
}

TEST(PartitionIidTest, IsBijectionOnRecords) {
  const std::vector<Example> examples = Numbered(103);
  absl::StatusOr<std::vector<ClientDataset>> shards =
      PartitionIid(examples, 10, 5);
  ASSERT_TRUE(shards.ok()) << shards.status();
  std::vector<int> seen;
  for (const ClientDataset& shard : *shards) {
    for (const Example& e : shard.examples) {
      seen.push_back(static_cast<int>(e.features[0]));
    }
  }
  std::sort(seen.begin(), seen.end());
  ASSERT_EQ(seen.size(), 103u);
  for (int i = 0; i < 103; ++i) EXPECT_EQ(seen[i], i);
}

TEST(PartitionIidTest, ShardSizesDifferByAtMostOneWithExtrasFirst) {
  const std::vector<Example> examples = Numbered(103);
  std::vector<ClientDataset> shards = PartitionIid(examples, 10, 5).value();
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(shards[i].size(), i < 3 ? 11 : 10) << i;
  }
}

TEST(PartitionIidTest, SeedDeterminesAssignment) {
  const std::vector<Example> examples = Numbered(50);
  std::vector<ClientDataset> a = PartitionIid(examples, 4, 9).value();
  std::vector<ClientDataset> b = PartitionIid(examples, 4, 9).value();
  std::vector<ClientDataset> c = PartitionIid(examples, 4, 10).value();
  bool all_equal_c = true;
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(a[i].examples, b[i].examples);
    all_equal_c = all_equal_c && a[i].examples == c[i].examples;
  }
  EXPECT_FALSE(all_equal_c);
}

TEST(PartitionIidTest, ShuffleIsNotIdentity) {
  const std::vector<Example> examples = Numbered(100);
  std::vector<ClientDataset> shards = PartitionIid(examples, 1, 3).value();
  ASSERT_EQ(shards.size(), 1u);
  EXPECT_NE(shards[0].examples, examples);
}

TEST(PartitionIidTest, RejectsTooFewRecordsOrClients) {
  const std::vector<Example> examples = Numbered(3);
  EXPECT_FALSE(PartitionIid(examples, 4, 0).ok());
  EXPECT_FALSE(PartitionIid(examples, 0, 0).ok());
}

}  // namespace
}  // namespace fedsofim
