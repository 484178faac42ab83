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
#include "fedsofim/core/config.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace fedsofim {
namespace {

absl::Status BadValue(absl::string_view key, absl::string_view value) {
  return absl::InvalidArgumentError(
      absl::StrCat("invalid value for ", key, ": '", value, "'"));
}

absl::Status ParseInt(absl::string_view key, absl::string_view value, int& out) {
  if (!absl::SimpleAtoi(value, &out)) return BadValue(key, value);
  return absl::OkStatus();
}

absl::Status ParseDouble(absl::string_view key, absl::string_view value,
                         double& out) {
  if (!absl::SimpleAtod(value, &out)) return BadValue(key, value);
  return absl::OkStatus();
}

std::string FormatDouble(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

absl::string_view OptimizerName(Optimizer optimizer) {
  switch (optimizer) {
    case Optimizer::kSofim:
      return "sofim";
    case Optimizer::kFedGd:
      return "fedgd";
  }
  return "unknown";
}

absl::StatusOr<Optimizer> ParseOptimizer(absl::string_view name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "sofim") return Optimizer::kSofim;
  if (lower == "fedgd") return Optimizer::kFedGd;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown optimizer '", name, "' (expected sofim or fedgd)"));
}

absl::StatusOr<FederatedConfig> ValidateConfig(const FederatedConfig& raw) {
  std::vector<std::string> violations;
  if (raw.num_clients < 1) violations.push_back("clients must be at least 1");
  if (raw.rounds < 1) violations.push_back("rounds must be at least 1");
  if (!(raw.eta > 0.0)) violations.push_back("eta must be positive");
  if (!(raw.clip_norm > 0.0)) violations.push_back("clip_cg must be positive");
  if (!(raw.noise_multiplier >= 0.0)) {
    violations.push_back("sigma_g must be non-negative");
  }
  if (!(raw.beta >= 0.0 && raw.beta < 1.0)) {
    violations.push_back("beta must lie in [0,1)");
  }
  if (!(raw.rho > 0.0)) violations.push_back("rho must be positive");
  if (!violations.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(violations, "; "));
  }
  return raw;
}

const std::vector<absl::string_view>& ConfigKeys() {
  static const auto* keys = new std::vector<absl::string_view>{
      "clients", "rounds", "eta",         "clip_cg",  "sigma_g",
      "beta",    "rho",    "master_seed", "optimizer"};
  return *keys;
}

absl::Status SetConfigValue(FederatedConfig& config, absl::string_view key,
                            absl::string_view value) {
  value = absl::StripAsciiWhitespace(value);
  if (key == "clients") return ParseInt(key, value, config.num_clients);
  if (key == "rounds") return ParseInt(key, value, config.rounds);
  if (key == "eta") return ParseDouble(key, value, config.eta);
  if (key == "clip_cg") return ParseDouble(key, value, config.clip_norm);
  if (key == "sigma_g") return ParseDouble(key, value, config.noise_multiplier);
  if (key == "beta") return ParseDouble(key, value, config.beta);
  if (key == "rho") return ParseDouble(key, value, config.rho);
  if (key == "master_seed") {
    if (!absl::SimpleAtoi(value, &config.master_seed)) {
      return BadValue(key, value);
    }
    return absl::OkStatus();
  }
  if (key == "optimizer") {
    absl::StatusOr<Optimizer> optimizer = ParseOptimizer(value);
    if (!optimizer.ok()) return optimizer.status();
    config.optimizer = *optimizer;
    return absl::OkStatus();
  }
  return absl::NotFoundError(absl::StrCat("unknown config key '", key, "'"));
}

std::vector<std::pair<std::string, std::string>> ConfigToKeyValues(
    const FederatedConfig& config) {
  return {
      {"clients", absl::StrCat(config.num_clients)},
      {"rounds", absl::StrCat(config.rounds)},
      {"eta", FormatDouble(config.eta)},
      {"clip_cg", FormatDouble(config.clip_norm)},
      {"sigma_g", FormatDouble(config.noise_multiplier)},
      {"beta", FormatDouble(config.beta)},
      {"rho", FormatDouble(config.rho)},
      {"master_seed", absl::StrCat(config.master_seed)},
      {"optimizer", std::string(OptimizerName(config.optimizer))},
  };
}

absl::StatusOr<std::vector<KeyValue>> ParseKeyValueText(absl::string_view text) {
  std::vector<KeyValue> out;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected 'key = value'"));
    }
    KeyValue kv;
    kv.key = std::string(absl::StripAsciiWhitespace(line.substr(0, eq)));
    kv.value = std::string(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    kv.line = line_number;
    if (kv.key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": empty key"));
    }
    out.push_back(std::move(kv));
  }
  return out;
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fedsofim
