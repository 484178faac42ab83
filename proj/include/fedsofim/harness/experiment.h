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
#ifndef FEDSOFIM_HARNESS_EXPERIMENT_H_
#define FEDSOFIM_HARNESS_EXPERIMENT_H_

#include <memory>
#include <string>
#include <variant>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedsofim/core/config.h"
#include "fedsofim/core/metrics.h"
#include "fedsofim/harness/metrics_io.h"
#include "fedsofim/harness/simulator.h"
#include "fedsofim/task/objective.h"
#include "fedsofim/task/quadratic_task.h"
#include "fedsofim/task/synthetic_features.h"

namespace fedsofim {

// Default l2 penalty of the softmax head.
inline constexpr double kDefaultL2Lambda = 1e-4;

// Frozen features read from disk and split IID across clients.
struct FeatureFileTask {
  std::string train_path;
  // Optional; accuracy falls back to the training data when empty.
  std::string test_path;
  double l2_lambda = kDefaultL2Lambda;
  uint64_t partition_seed = 0;
};

// Synthetic anisotropic features; the first `test_examples` generated records
// are held out and the rest are split IID.
struct SyntheticSoftmaxTask {
  SyntheticFeatureSpec features;
  int test_examples = 1000;
  double l2_lambda = kDefaultL2Lambda;
  uint64_t partition_seed = 0;
};

struct SyntheticQuadraticTask {
  QuadraticSpec spec;
};

using TaskBinding =
    std::variant<FeatureFileTask, SyntheticSoftmaxTask, SyntheticQuadraticTask>;

// Builds the objective for `num_clients` clients.
absl::StatusOr<std::unique_ptr<FederatedObjective>> BuildObjective(
    const TaskBinding& binding, int num_clients);

struct NonPrivate {};
struct ExplicitNoise {
  double noise_multiplier = 0.0;
};
struct PrivacyTarget {
  double epsilon = 1.0;
  double delta = 1e-5;
};
// Exactly one privacy regime per plan.
using PrivacyMode = std::variant<NonPrivate, ExplicitNoise, PrivacyTarget>;

struct ExperimentPlan {
  FederatedConfig config;
  TaskBinding task = SyntheticQuadraticTask{};
  PrivacyMode privacy = NonPrivate{};
  int eval_every = 10;
  // Metrics file; nothing is written when empty.
  std::string output_path;
  int workers = 1;
  bool record_elapsed = true;
  StepSchedule schedule;
};

// Reads `key = value` lines into a plan. FederatedConfig keys are accepted
// alongside the plan keys documented in the README. Setting sigma_g together
// with epsilon/delta is an error.
absl::StatusOr<ExperimentPlan> ParsePlan(absl::string_view text);
absl::StatusOr<ExperimentPlan> LoadPlan(const std::string& path);

// Applies one override with the same key names as the file format.
absl::Status ApplyPlanValue(ExperimentPlan& plan, absl::string_view key,
                            absl::string_view value);

// Resolves sigma_g from the plan's privacy regime, calibrating when a target
// is given.
absl::StatusOr<double> ResolveNoiseMultiplier(const ExperimentPlan& plan);

struct ExperimentResult {
  FederatedConfig config;  // with the resolved sigma_g
  MetricsTable table;
  ServerState final_state;
  MetricsPreamble preamble;
};

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentPlan& plan);

// Same, on an objective the caller already built.
absl::StatusOr<ExperimentResult> RunExperiment(
    const ExperimentPlan& plan, const FederatedObjective& objective);

}  // namespace fedsofim

#endif  // FEDSOFIM_HARNESS_EXPERIMENT_H_
