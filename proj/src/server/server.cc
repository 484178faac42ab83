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
#include "fedsofim/server/server.h"

#include <cassert>

#include "absl/strings/str_cat.h"

namespace fedsofim {
namespace {

absl::Status CheckSameSize(const ParameterVector& a, const ParameterVector& b,
                           absl::string_view what) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        what, ": dimension mismatch (", a.size(), " vs ", b.size(), ")"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ParameterVector> Aggregate(
    std::span<const ClientRelease> releases, int expected_clients) {
  if (static_cast<int>(releases.size()) != expected_clients ||
      releases.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", expected_clients, " releases, got ",
                     releases.size()));
  }
  const ClientRelease& first = releases.front();
  ParameterVector sum = ParameterVector::Zero(first.vector.size());
  for (const ClientRelease& release : releases) {
    if (release.vector.size() != first.vector.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "release from client ", release.client_id, " has dimension ",
          release.vector.size(), ", expected ", first.vector.size()));
    }
    if (release.round != first.round) {
      return absl::InvalidArgumentError(
          absl::StrCat("releases mix rounds ", first.round, " and ",
                       release.round));
    }
    sum += release.vector;
  }
  return ParameterVector(sum / static_cast<double>(releases.size()));
}

absl::StatusOr<ParameterVector> UpdateMomentum(const ParameterVector& previous,
                                               const ParameterVector& aggregate,
                                               double beta) {
  if (absl::Status s = CheckSameSize(previous, aggregate, "momentum update");
      !s.ok()) {
    return s;
  }
  return ParameterVector(beta * previous + (1.0 - beta) * aggregate);
}

void PreconditionApplyInto(const ParameterVector& momentum,
                           const ParameterVector& gradient, double rho,
                           ParameterVector& out) {
  assert(momentum.size() == gradient.size());
  const double momentum_sq = momentum.squaredNorm();
  const double projection = momentum.dot(gradient);
  const double coefficient = projection / (rho * (rho + momentum_sq));
  out.resize(gradient.size());
  out = gradient / rho - coefficient * momentum;
}

ParameterVector PreconditionApply(const ParameterVector& momentum,
                                  const ParameterVector& gradient, double rho) {
  ParameterVector out(gradient.size());
  PreconditionApplyInto(momentum, gradient, rho, out);
  return out;
}

void SofimStepInPlace(ServerState& state, const ParameterVector& aggregate,
                      double eta, const PreconditionerParams& params,
                      ParameterVector& scratch) {
  state.momentum = params.beta * state.momentum + (1.0 - params.beta) * aggregate;
  PreconditionApplyInto(state.momentum, aggregate, params.rho, scratch);
  state.theta -= eta * scratch;
  ++state.round;
}

absl::StatusOr<ServerState> SofimStep(const ServerState& state,
                                      const ParameterVector& aggregate,
                                      double eta,
                                      const PreconditionerParams& params) {
  if (absl::Status s = CheckSameSize(state.theta, aggregate, "sofim step");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckSameSize(state.momentum, aggregate, "sofim step");
      !s.ok()) {
    return s;
  }
  if (!(params.rho > 0.0)) {
    return absl::InvalidArgumentError("rho must be positive");
  }
  ServerState next = state;
  ParameterVector scratch(aggregate.size());
  SofimStepInPlace(next, aggregate, eta, params, scratch);
  return next;
}

absl::StatusOr<ServerState> SofimStep(const ServerState& state,
                                      const ParameterVector& aggregate,
                                      const FederatedConfig& config) {
  return SofimStep(state, aggregate, config.eta,
                   PreconditionerParams{config.rho, config.beta});
}

absl::StatusOr<ServerState> FedGdStep(const ServerState& state,
                                      const ParameterVector& aggregate,
                                      double eta) {
  if (absl::Status s = CheckSameSize(state.theta, aggregate, "fedgd step");
      !s.ok()) {
    return s;
  }
  ServerState next = state;
  next.theta -= eta * aggregate;
  ++next.round;
  return next;
}

}  // namespace fedsofim
