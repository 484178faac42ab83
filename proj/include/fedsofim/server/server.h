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
#ifndef FEDSOFIM_SERVER_SERVER_H_
#define FEDSOFIM_SERVER_SERVER_H_

#include <span>

#include "absl/status/statusor.h"
#include "fedsofim/client/client.h"
#include "fedsofim/core/config.h"
#include "fedsofim/core/types.h"

namespace fedsofim {

// Regularizer and momentum of the rank-one curvature proxy
// rho I + M M^T. rho > 0 keeps the proxy positive definite for every M.
struct PreconditionerParams {
  double rho = 0.5;
  double beta = 0.9;
};

// G_t = (1/n) sum_i g_{i,t}. Requires exactly `expected_clients` releases of
// one dimension, all from the same round. Summation runs in slice order.
absl::StatusOr<ParameterVector> Aggregate(
    std::span<const ClientRelease> releases, int expected_clients);

// M_t = beta M_{t-1} + (1 - beta) G_t.
absl::StatusOr<ParameterVector> UpdateMomentum(const ParameterVector& previous,
                                               const ParameterVector& aggregate,
                                               double beta);

// H G with H = (rho I + M M^T)^{-1}, via Sherman-Morrison:
//
//   H G = G / rho - M (M^T G) / (rho (rho + ||M||^2))
//
// Two inner products and O(d) vector work; no d x d object is formed.
// M and G must have equal size.
ParameterVector PreconditionApply(const ParameterVector& momentum,
                                  const ParameterVector& gradient, double rho);

// Writes H G into `out` without allocating when `out` already has size d.
void PreconditionApplyInto(const ParameterVector& momentum,
                           const ParameterVector& gradient, double rho,
                           ParameterVector& out);

// One DP-FedSOFIM server update. The momentum is refreshed with G_t first and
// the preconditioner is built from that new M_t, then
// theta <- theta - eta H_t G_t.
absl::StatusOr<ServerState> SofimStep(const ServerState& state,
                                      const ParameterVector& aggregate,
                                      double eta,
                                      const PreconditionerParams& params);
absl::StatusOr<ServerState> SofimStep(const ServerState& state,
                                      const ParameterVector& aggregate,
                                      const FederatedConfig& config);

// In-place form of SofimStep for the round loop. `scratch` is reused across
// calls to hold H G. Shapes are the caller's responsibility.
void SofimStepInPlace(ServerState& state, const ParameterVector& aggregate,
                      double eta, const PreconditionerParams& params,
                      ParameterVector& scratch);

// theta <- theta - eta G_t; the momentum buffer is left untouched.
absl::StatusOr<ServerState> FedGdStep(const ServerState& state,
                                      const ParameterVector& aggregate,
                                      double eta);

}  // namespace fedsofim

#endif  // FEDSOFIM_SERVER_SERVER_H_
