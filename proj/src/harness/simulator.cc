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
#include "fedsofim/harness/simulator.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "fedsofim/client/client.h"
#include "fedsofim/core/random.h"
#include "fedsofim/core/status_macros.h"
#include "fedsofim/server/server.h"

namespace fedsofim {
namespace {

absl::StatusOr<std::vector<ClientRelease>> CollectReleases(
    const FederatedObjective& objective, const ParameterVector& theta,
    const FederatedConfig& config, int round, int workers) {
  const int n = objective.num_clients();
  const ReleaseParams params{config.clip_norm, config.noise_multiplier, n};
  std::vector<ClientRelease> releases(n);
  std::vector<absl::Status> statuses(n);
  auto work = [&](int client) {
    RandomStream stream = DeriveNoiseStream(config.master_seed, client, round);
    absl::StatusOr<ClientRelease> release =
        PrivateRelease(objective, client, round, theta, params, stream);
    if (release.ok()) {
      releases[client] = *std::move(release);
    } else {
      statuses[client] = release.status();
    }
  };
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < n; i += workers) work(i);
      });
    }
  }
  for (const absl::Status& status : statuses) {
    if (!status.ok()) return status;
  }
  return releases;
}

}  // namespace

RoundMetrics EvaluateMetrics(const FederatedObjective& objective,
                             const ParameterVector& theta,
                             const ParameterVector& aggregate,
                             int completed_rounds) {
  RoundMetrics metrics;
  metrics.round = completed_rounds;
  metrics.train_loss = objective.TrainLoss(theta);
  metrics.test_accuracy = objective.TestAccuracy(theta).value_or(0.0);
  metrics.aggregate_grad_norm = aggregate.norm();
  if (std::optional<double> optimum = objective.OptimalLoss()) {
    const double gap = metrics.train_loss - *optimum;
    // Non-finite losses are kept so divergence stays visible.
    metrics.suboptimality_gap = std::isfinite(gap) ? std::max(gap, 0.0) : gap;
  }
  return metrics;
}

absl::StatusOr<RoundOutput> RunRound(const FederatedObjective& objective,
                                     const ServerState& state,
                                     const FederatedConfig& config, int round,
                                     const RoundOptions& options) {
  if (round < 0 || round >= config.rounds) {
    return absl::OutOfRangeError(
        absl::StrCat("round ", round, " outside [0, ", config.rounds, ")"));
  }
  if (round != state.round + 1) {
    return absl::FailedPreconditionError(absl::StrCat(
        "state has completed round ", state.round, ", cannot run ", round));
  }
  if (objective.num_clients() != config.num_clients) {
    return absl::InvalidArgumentError(
        absl::StrCat("task has ", objective.num_clients(),
                     " clients but config expects ", config.num_clients));
  }
  FEDSOFIM_ASSIGN_OR_RETURN(
      std::vector<ClientRelease> releases,
      CollectReleases(objective, state.theta, config, round, options.workers));
  RoundOutput out;
  FEDSOFIM_ASSIGN_OR_RETURN(out.aggregate,
                            Aggregate(releases, config.num_clients));
  const double eta =
      options.schedule ? options.schedule(round, config.eta) : config.eta;
  switch (config.optimizer) {
    case Optimizer::kSofim: {
      FEDSOFIM_ASSIGN_OR_RETURN(
          out.state, SofimStep(state, out.aggregate, eta,
                               PreconditionerParams{config.rho, config.beta}));
      break;
    }
    case Optimizer::kFedGd: {
      FEDSOFIM_ASSIGN_OR_RETURN(out.state,
                                FedGdStep(state, out.aggregate, eta));
      break;
    }
  }
  if (options.evaluate) {
    out.metrics =
        EvaluateMetrics(objective, out.state.theta, out.aggregate, round + 1);
  }
  return out;
}

absl::StatusOr<RunResult> RunTraining(const FederatedObjective& objective,
                                      const FederatedConfig& config,
                                      const RunOptions& options) {
  FEDSOFIM_ASSIGN_OR_RETURN(FederatedConfig validated, ValidateConfig(config));
  if (options.eval_every < 1) {
    return absl::InvalidArgumentError("eval_every must be at least 1");
  }
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.final_state = ServerState::Initial(objective.InitialParameters());
  RoundOptions round_options;
  round_options.workers = options.workers;
  round_options.schedule = options.schedule;
  for (int t = 0; t < validated.rounds; ++t) {
    const int completed = t + 1;
    round_options.evaluate =
        completed % options.eval_every == 0 || completed == validated.rounds;
    FEDSOFIM_ASSIGN_OR_RETURN(
        RoundOutput out,
        RunRound(objective, result.final_state, validated, t, round_options));
    result.final_state = std::move(out.state);
    if (out.metrics) {
      if (options.record_elapsed) {
        out.metrics->elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
      }
      result.table.push_back(*out.metrics);
    }
  }
  return result;
}

}  // namespace fedsofim
