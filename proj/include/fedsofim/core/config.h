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
#ifndef FEDSOFIM_CORE_CONFIG_H_
#define FEDSOFIM_CORE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace fedsofim {

enum class Optimizer { kSofim, kFedGd };

absl::string_view OptimizerName(Optimizer optimizer);
absl::StatusOr<Optimizer> ParseOptimizer(absl::string_view name);

// Hyperparameters of one federated training run.
//
// Keys used by the text format and the CLI overrides are given next to each
// field.
struct FederatedConfig {
  int num_clients = 20;            // clients
  int rounds = 70;                 // rounds
  double eta = 0.5;                // eta
  double clip_norm = 10.0;         // clip_cg
  double noise_multiplier = 1.0;   // sigma_g; 0 disables the noise draw
  double beta = 0.9;               // beta
  double rho = 0.5;                // rho
  uint64_t master_seed = 0;        // master_seed
  Optimizer optimizer = Optimizer::kSofim;  // optimizer: sofim | fedgd

  bool is_private() const { return noise_multiplier > 0.0; }

  friend bool operator==(const FederatedConfig&,
                         const FederatedConfig&) = default;
};

// Returns `raw` unchanged when every bound holds. Otherwise the error message
// lists each violated bound by field name.
absl::StatusOr<FederatedConfig> ValidateConfig(const FederatedConfig& raw);

// Keys accepted by SetConfigValue, in the order ConfigToKeyValues emits them.
const std::vector<absl::string_view>& ConfigKeys();

// Assigns one `key = value` pair. Unknown keys are NotFound so that callers
// layering extra keys on the same file can tell them apart from bad values.
absl::Status SetConfigValue(FederatedConfig& config, absl::string_view key,
                            absl::string_view value);

std::vector<std::pair<std::string, std::string>> ConfigToKeyValues(
    const FederatedConfig& config);

// One parsed `key = value` line of a flat config file.
struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

// Splits a flat config file. Blank lines and lines starting with '#' are
// skipped; every other line must contain '='.
absl::StatusOr<std::vector<KeyValue>> ParseKeyValueText(absl::string_view text);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);

}  // namespace fedsofim

#endif  // FEDSOFIM_CORE_CONFIG_H_
