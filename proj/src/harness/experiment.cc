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
#include "fedsofim/harness/experiment.h"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <type_traits>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "fedsofim/accountant/accountant.h"
#include "fedsofim/core/status_macros.h"
#include "fedsofim/task/dataset.h"
#include "fedsofim/task/feature_file.h"
#include "fedsofim/task/softmax_task.h"

namespace fedsofim {
namespace {

absl::Status BadValue(absl::string_view key, absl::string_view value) {
  return absl::InvalidArgumentError(
      absl::StrCat("invalid value for ", key, ": '", value, "'"));
}

template <typename T>
absl::Status ParseNumber(absl::string_view key, absl::string_view value,
                         T& out) {
  bool ok = false;
  if constexpr (std::is_floating_point_v<T>) {
    ok = absl::SimpleAtod(value, &out);
  } else {
    ok = absl::SimpleAtoi(value, &out);
  }
  return ok ? absl::OkStatus() : BadValue(key, value);
}

absl::Status ParseBool(absl::string_view key, absl::string_view value,
                       bool& out) {
  const std::string lower = absl::AsciiStrToLower(value);
  if (lower == "true" || lower == "1" || lower == "yes") {
    out = true;
  } else if (lower == "false" || lower == "0" || lower == "no") {
    out = false;
  } else {
    return BadValue(key, value);
  }
  return absl::OkStatus();
}

absl::string_view TaskKind(const TaskBinding& binding) {
  switch (binding.index()) {
    case 0:
      return "features";
    case 1:
      return "synthetic_softmax";
    default:
      return "quadratic";
  }
}

absl::Status SetTaskKind(ExperimentPlan& plan, absl::string_view kind) {
  if (kind == TaskKind(plan.task)) return absl::OkStatus();
  if (kind == "features") {
    plan.task = FeatureFileTask{};
  } else if (kind == "synthetic_softmax") {
    plan.task = SyntheticSoftmaxTask{};
  } else if (kind == "quadratic") {
    plan.task = SyntheticQuadraticTask{};
  } else {
    return BadValue("task", kind);
  }
  return absl::OkStatus();
}

absl::Status MismatchedKey(absl::string_view key, const TaskBinding& binding) {
  static constexpr absl::string_view kTaskKeys[] = {
      "train_file",     "test_file",        "l2_lambda",
      "partition_seed", "examples",         "test_examples",
      "feature_dim",    "classes",          "condition_number",
      "class_separation", "feature_offset", "feature_scale", "task_seed",      "dim",
      "mu",             "smoothness",       "heterogeneity",
      "samples_per_client"};
  if (std::find(std::begin(kTaskKeys), std::end(kTaskKeys), key) ==
      std::end(kTaskKeys)) {
    return absl::InvalidArgumentError(absl::StrCat("unknown key '", key, "'"));
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "key '", key, "' does not apply to task '", TaskKind(binding), "'"));
}

absl::Status SetTaskValue(TaskBinding& binding, absl::string_view key,
                          absl::string_view value) {
  if (auto* file = std::get_if<FeatureFileTask>(&binding)) {
    if (key == "train_file") {
      file->train_path = std::string(value);
      return absl::OkStatus();
    }
    if (key == "test_file") {
      file->test_path = std::string(value);
      return absl::OkStatus();
    }
    if (key == "l2_lambda") return ParseNumber(key, value, file->l2_lambda);
    if (key == "partition_seed") {
      return ParseNumber(key, value, file->partition_seed);
    }
    return MismatchedKey(key, binding);
  }
  if (auto* soft = std::get_if<SyntheticSoftmaxTask>(&binding)) {
    SyntheticFeatureSpec& f = soft->features;
    if (key == "examples") return ParseNumber(key, value, f.num_examples);
    if (key == "test_examples") {
      return ParseNumber(key, value, soft->test_examples);
    }
    if (key == "feature_dim") return ParseNumber(key, value, f.feature_dim);
    if (key == "classes") return ParseNumber(key, value, f.num_classes);
    if (key == "condition_number") {
      return ParseNumber(key, value, f.condition_number);
    }
    if (key == "class_separation") {
      return ParseNumber(key, value, f.class_separation);
    }
    if (key == "feature_scale") {
      return ParseNumber(key, value, f.feature_scale);
    }
    if (key == "feature_offset") {
      return ParseNumber(key, value, f.feature_offset);
    }
    if (key == "task_seed") return ParseNumber(key, value, f.seed);
    if (key == "l2_lambda") return ParseNumber(key, value, soft->l2_lambda);
    if (key == "partition_seed") {
      return ParseNumber(key, value, soft->partition_seed);
    }
    return MismatchedKey(key, binding);
  }
  QuadraticSpec& q = std::get<SyntheticQuadraticTask>(binding).spec;
  if (key == "dim") return ParseNumber(key, value, q.dim);
  if (key == "mu") return ParseNumber(key, value, q.mu);
  if (key == "smoothness") return ParseNumber(key, value, q.smoothness);
  if (key == "heterogeneity") return ParseNumber(key, value, q.heterogeneity);
  if (key == "samples_per_client") {
    return ParseNumber(key, value, q.samples_per_client);
  }
  if (key == "task_seed") return ParseNumber(key, value, q.seed);
  return MismatchedKey(key, binding);
}

std::string FormatReal(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

absl::StatusOr<std::unique_ptr<FederatedObjective>> BuildObjective(
    const TaskBinding& binding, int num_clients) {
  if (const auto* file = std::get_if<FeatureFileTask>(&binding)) {
    if (file->train_path.empty()) {
      return absl::InvalidArgumentError("train_file is required");
    }
    FEDSOFIM_ASSIGN_OR_RETURN(FeatureFile train,
                              LoadFrozenFeatures(file->train_path));
    std::vector<Example> test;
    if (!file->test_path.empty()) {
      FEDSOFIM_ASSIGN_OR_RETURN(FeatureFile test_file,
                                LoadFrozenFeatures(file->test_path));
      if (test_file.metadata.feature_dim != train.metadata.feature_dim ||
          test_file.metadata.num_classes != train.metadata.num_classes) {
        return absl::InvalidArgumentError(
            "train and test feature files disagree on dim or classes");
      }
      test = std::move(test_file.examples);
    }
    FEDSOFIM_ASSIGN_OR_RETURN(
        SoftmaxHeadTask task,
        SoftmaxHeadTask::Create(train.metadata.num_classes,
                                train.metadata.feature_dim, file->l2_lambda));
    FEDSOFIM_ASSIGN_OR_RETURN(
        std::vector<ClientDataset> clients,
        PartitionIid(train.examples, num_clients, file->partition_seed));
    FEDSOFIM_ASSIGN_OR_RETURN(
        SoftmaxObjective objective,
        SoftmaxObjective::Create(task, std::move(clients), std::move(test)));
    return std::make_unique<SoftmaxObjective>(std::move(objective));
  }
  if (const auto* soft = std::get_if<SyntheticSoftmaxTask>(&binding)) {
    if (soft->test_examples < 0 ||
        soft->test_examples >= soft->features.num_examples) {
      return absl::InvalidArgumentError(
          "test_examples must lie in [0, examples)");
    }
    FEDSOFIM_ASSIGN_OR_RETURN(std::vector<Example> all,
                              MakeSyntheticFeatures(soft->features));
    std::vector<Example> test(all.begin(), all.begin() + soft->test_examples);
    std::span<const Example> train(all.data() + soft->test_examples,
                                   all.size() - soft->test_examples);
    FEDSOFIM_ASSIGN_OR_RETURN(
        SoftmaxHeadTask task,
        SoftmaxHeadTask::Create(soft->features.num_classes,
                                soft->features.feature_dim, soft->l2_lambda));
    FEDSOFIM_ASSIGN_OR_RETURN(
        std::vector<ClientDataset> clients,
        PartitionIid(train, num_clients, soft->partition_seed));
    FEDSOFIM_ASSIGN_OR_RETURN(
        SoftmaxObjective objective,
        SoftmaxObjective::Create(task, std::move(clients), std::move(test)));
    return std::make_unique<SoftmaxObjective>(std::move(objective));
  }
  QuadraticSpec spec = std::get<SyntheticQuadraticTask>(binding).spec;
  spec.num_clients = num_clients;
  FEDSOFIM_ASSIGN_OR_RETURN(QuadraticTask task, MakeSyntheticQuadratic(spec));
  return std::make_unique<QuadraticTask>(std::move(task));
}

absl::Status ApplyPlanValue(ExperimentPlan& plan, absl::string_view key,
                            absl::string_view value) {
  if (key == "task") return SetTaskKind(plan, value);
  if (key == "eval_every") return ParseNumber(key, value, plan.eval_every);
  if (key == "output") {
    plan.output_path = std::string(value);
    return absl::OkStatus();
  }
  if (key == "workers") return ParseNumber(key, value, plan.workers);
  if (key == "record_elapsed") {
    return ParseBool(key, value, plan.record_elapsed);
  }
  if (key == "epsilon" || key == "delta") {
    if (std::holds_alternative<ExplicitNoise>(plan.privacy)) {
      return absl::InvalidArgumentError(
          "set either sigma_g or an (epsilon, delta) target, not both");
    }
    if (!std::holds_alternative<PrivacyTarget>(plan.privacy)) {
      plan.privacy = PrivacyTarget{};
    }
    PrivacyTarget& target = std::get<PrivacyTarget>(plan.privacy);
    return ParseNumber(key, value,
                       key == "epsilon" ? target.epsilon : target.delta);
  }
  if (key == "sigma_g") {
    if (std::holds_alternative<PrivacyTarget>(plan.privacy)) {
      return absl::InvalidArgumentError(
          "set either sigma_g or an (epsilon, delta) target, not both");
    }
    double sigma = 0.0;
    FEDSOFIM_RETURN_IF_ERROR(ParseNumber(key, value, sigma));
    plan.privacy = ExplicitNoise{sigma};
    plan.config.noise_multiplier = sigma;
    return absl::OkStatus();
  }
  absl::Status status = SetConfigValue(plan.config, key, value);
  if (!absl::IsNotFound(status)) return status;
  return SetTaskValue(plan.task, key, value);
}

absl::StatusOr<ExperimentPlan> ParsePlan(absl::string_view text) {
  FEDSOFIM_ASSIGN_OR_RETURN(std::vector<KeyValue> entries,
                            ParseKeyValueText(text));
  ExperimentPlan plan;
  // The task kind decides which task keys are valid, so it goes first.
  for (const KeyValue& kv : entries) {
    if (kv.key == "task") {
      FEDSOFIM_RETURN_IF_ERROR(SetTaskKind(plan, kv.value));
    }
  }
  for (const KeyValue& kv : entries) {
    if (kv.key == "task") continue;
    absl::Status status = ApplyPlanValue(plan, kv.key, kv.value);
    if (!status.ok()) {
      return absl::Status(status.code(), absl::StrCat("line ", kv.line, ": ",
                                                      status.message()));
    }
  }
  return plan;
}

absl::StatusOr<ExperimentPlan> LoadPlan(const std::string& path) {
  FEDSOFIM_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  return ParsePlan(text);
}

absl::StatusOr<double> ResolveNoiseMultiplier(const ExperimentPlan& plan) {
  if (std::holds_alternative<NonPrivate>(plan.privacy)) return 0.0;
  if (const auto* explicit_noise = std::get_if<ExplicitNoise>(&plan.privacy)) {
    return explicit_noise->noise_multiplier;
  }
  const PrivacyTarget& target = std::get<PrivacyTarget>(plan.privacy);
  return CalibrateSigma(target.epsilon, target.delta, plan.config.num_clients,
                        plan.config.rounds);
}

absl::StatusOr<ExperimentResult> RunExperiment(
    const ExperimentPlan& plan, const FederatedObjective& objective) {
  ExperimentResult result;
  result.config = plan.config;
  FEDSOFIM_ASSIGN_OR_RETURN(result.config.noise_multiplier,
                            ResolveNoiseMultiplier(plan));
  FEDSOFIM_ASSIGN_OR_RETURN(result.config, ValidateConfig(result.config));

  RunOptions options;
  options.eval_every = plan.eval_every;
  options.workers = plan.workers;
  options.record_elapsed = plan.record_elapsed;
  options.schedule = plan.schedule;
  FEDSOFIM_ASSIGN_OR_RETURN(RunResult run,
                            RunTraining(objective, result.config, options));
  result.table = std::move(run.table);
  result.final_state = std::move(run.final_state);

  result.preamble.emplace_back("task", std::string(TaskKind(plan.task)));
  if (const auto* target = std::get_if<PrivacyTarget>(&plan.privacy)) {
    result.preamble.emplace_back("epsilon", FormatReal(target->epsilon));
    result.preamble.emplace_back("delta", FormatReal(target->delta));
  }
  for (auto& kv : ConfigToKeyValues(result.config)) {
    result.preamble.push_back(std::move(kv));
  }
  if (!plan.output_path.empty()) {
    FEDSOFIM_RETURN_IF_ERROR(
        EmitMetrics(result.table, plan.output_path, result.preamble));
  }
  return result;
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentPlan& plan) {
  FEDSOFIM_ASSIGN_OR_RETURN(
      std::unique_ptr<FederatedObjective> objective,
      BuildObjective(plan.task, plan.config.num_clients));
  return RunExperiment(plan, *objective);
}

}  // namespace fedsofim
