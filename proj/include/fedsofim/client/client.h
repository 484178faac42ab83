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
#ifndef FEDSOFIM_CLIENT_CLIENT_H_
#define FEDSOFIM_CLIENT_CLIENT_H_

#include <span>

#include "absl/status/statusor.h"
#include "fedsofim/core/random.h"
#include "fedsofim/core/types.h"
#include "fedsofim/task/objective.h"

namespace fedsofim {

// The noisy normalized update g_{i,t} one client sends in one round.
struct ClientRelease {
  ParameterVector vector;
  int client_id = 0;
  int round = 0;
};

struct ReleaseParams {
  double clip_norm = 1.0;
  // sigma_g. Zero skips the noise draw entirely.
  double noise_multiplier = 0.0;
  int num_clients = 1;

  // Per-coordinate standard deviation of E_{i,t}: C_g sigma_g / sqrt(n).
  double sum_noise_stddev() const;
};

// g * min(1, clip_norm / ||g||). Vectors inside the ball are returned
// bit-for-bit; clipped outputs never exceed clip_norm in computed norm.
ParameterVector ClipGradient(const ParameterVector& g, double clip_norm);
void ClipInPlace(ParameterVector& g, double clip_norm);

// (S + E) / |D| where S sums the individually clipped `per_example` gradients
// and E ~ N(0, (C_g sigma_g)^2 / n I_d) is drawn coordinate-wise from
// `stream`. The noise is added to the sum, before normalization.
absl::StatusOr<ParameterVector> ReleaseFromGradients(
    std::span<const ParameterVector> per_example, const ReleaseParams& params,
    RandomStream& stream);

// Same mechanism with per-record gradients taken from `objective` at `theta`.
// `stream` must be the one derived for (client, round).
absl::StatusOr<ClientRelease> PrivateRelease(const FederatedObjective& objective,
                                             int client, int round,
                                             const ParameterVector& theta,
                                             const ReleaseParams& params,
                                             RandomStream& stream);

}  // namespace fedsofim

#endif  // FEDSOFIM_CLIENT_CLIENT_H_
