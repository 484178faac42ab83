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
#include "fedsofim/client/client.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace fedsofim {
namespace {

absl::Status CheckParams(const ReleaseParams& params) {
  if (!(params.clip_norm > 0.0)) {
    return absl::InvalidArgumentError("clip_cg must be positive");
  }
  if (!(params.noise_multiplier >= 0.0)) {
    return absl::InvalidArgumentError("sigma_g must be non-negative");
  }
  if (params.num_clients < 1) {
    return absl::InvalidArgumentError("num_clients must be at least 1");
  }
  return absl::OkStatus();
}

void AddNoiseAndNormalize(ParameterVector& sum, const ReleaseParams& params,
                          int dataset_size, RandomStream& stream) {
  if (params.noise_multiplier > 0.0) {
    const double stddev = params.sum_noise_stddev();
    for (Eigen::Index k = 0; k < sum.size(); ++k) {
      sum[k] += stddev * stream.NextGaussian();
    }
  }
  sum /= static_cast<double>(dataset_size);
}

}  // namespace

double ReleaseParams::sum_noise_stddev() const {
  return clip_norm * noise_multiplier / std::sqrt(static_cast<double>(num_clients));
}

void ClipInPlace(ParameterVector& g, double clip_norm) {
  const double norm = g.norm();
  if (norm <= clip_norm) return;
  double scale = clip_norm / norm;
  g *= scale;
  // Rounding in the rescale can leave the computed norm an ulp above the
  // radius; shrink until it is not.
  while (g.norm() > clip_norm) g *= 1.0 - 0x1.0p-52;
}

ParameterVector ClipGradient(const ParameterVector& g, double clip_norm) {
  ParameterVector out = g;
  ClipInPlace(out, clip_norm);
  return out;
}

absl::StatusOr<ParameterVector> ReleaseFromGradients(
    std::span<const ParameterVector> per_example, const ReleaseParams& params,
    RandomStream& stream) {
  if (absl::Status s = CheckParams(params); !s.ok()) return s;
  if (per_example.empty()) {
    return absl::InvalidArgumentError("client dataset is empty");
  }
  const Eigen::Index d = per_example.front().size();
  ParameterVector sum = ParameterVector::Zero(d);
  ParameterVector clipped(d);
  for (const ParameterVector& g : per_example) {
    if (g.size() != d) {
      return absl::InvalidArgumentError("per-example gradients differ in size");
    }
    clipped = g;
    ClipInPlace(clipped, params.clip_norm);
    sum += clipped;
  }
  AddNoiseAndNormalize(sum, params, static_cast<int>(per_example.size()),
                       stream);
  return sum;
}

absl::StatusOr<ClientRelease> PrivateRelease(const FederatedObjective& objective,
                                             int client, int round,
                                             const ParameterVector& theta,
                                             const ReleaseParams& params,
                                             RandomStream& stream) {
  if (absl::Status s = CheckParams(params); !s.ok()) return s;
  if (client < 0 || client >= objective.num_clients()) {
    return absl::OutOfRangeError(absl::StrCat("no client ", client));
  }
  if (theta.size() != objective.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter dimension ", theta.size(),
                     " does not match task dimension ", objective.dimension()));
  }
  const int size = objective.client_size(client);
  if (size < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("client ", client, " dataset is empty"));
  }
  ClientRelease release;
  release.client_id = client;
  release.round = round;
  release.vector = ParameterVector::Zero(theta.size());
  ParameterVector grad(theta.size());
  for (int j = 0; j < size; ++j) {
    objective.ExampleGradient(theta, client, j, grad);
    ClipInPlace(grad, params.clip_norm);
    release.vector += grad;
  }
  AddNoiseAndNormalize(release.vector, params, size, stream);
  return release;
}

}  // namespace fedsofim
