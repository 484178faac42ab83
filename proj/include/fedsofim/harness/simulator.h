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
#ifndef FEDSOFIM_HARNESS_SIMULATOR_H_
#define FEDSOFIM_HARNESS_SIMULATOR_H_

#include <functional>
#include <optional>

#include "absl/status/statusor.h"
#include "fedsofim/core/config.h"
#include "fedsofim/core/metrics.h"
#include "fedsofim/core/types.h"
#include "fedsofim/task/objective.h"

namespace fedsofim {

// Step size for a round index; the default schedule is the constant eta.
using StepSchedule = std::function<double(int round, double eta)>;

struct RoundOptions {
  // Client releases are computed by up to this many threads. The result does
  // not depend on the value.
  int workers = 1;
  bool evaluate = true;
  StepSchedule schedule;
};

struct RoundOutput {
  ServerState state;
  ParameterVector aggregate;
  // Set when RoundOptions::evaluate is true. elapsed_seconds is left at 0.
  std::optional<RoundMetrics> metrics;
};

// One round: every client releases its noisy clipped update at state.theta,
// the server averages them and applies the configured optimizer step.
// `round` must equal state.round + 1 and lie in [0, config.rounds).
absl::StatusOr<RoundOutput> RunRound(const FederatedObjective& objective,
                                     const ServerState& state,
                                     const FederatedConfig& config, int round,
                                     const RoundOptions& options = {});

RoundMetrics EvaluateMetrics(const FederatedObjective& objective,
                             const ParameterVector& theta,
                             const ParameterVector& aggregate,
                             int completed_rounds);

struct RunOptions {
  int eval_every = 10;
  int workers = 1;
  // When false every elapsed_seconds is written as 0 so that repeated runs
  // produce byte-identical tables.
  bool record_elapsed = true;
  StepSchedule schedule;
};

struct RunResult {
  MetricsTable table;
  ServerState final_state;
};

// T rounds from objective.InitialParameters(). Metrics are recorded after
// every `eval_every`-th round and after the last one.
absl::StatusOr<RunResult> RunTraining(const FederatedObjective& objective,
                                      const FederatedConfig& config,
                                      const RunOptions& options = {});

}  // namespace fedsofim

#endif  // FEDSOFIM_HARNESS_SIMULATOR_H_
