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
#include "fedsofim/accountant/accountant.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "fedsofim/accountant/normal.h"

namespace fedsofim {
namespace {

// delta(epsilon) of a Gaussian mechanism whose sensitivity-to-noise ratio is
// `ratio` (Delta / sigma).
double GaussianDelta(double epsilon, double ratio) {
  const double shift = epsilon / ratio;
  const double half = 0.5 * ratio;
  const double first = NormalCdf(half - shift);
  const double second = std::exp(epsilon + LogNormalCdf(-half - shift));
  return std::clamp(first - second, 0.0, 1.0);
}

}  // namespace

absl::Status PrivacySpec::Validate() const {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0,1)");
  }
  if (rounds < 1) return absl::InvalidArgumentError("rounds must be at least 1");
  if (num_clients < 1) {
    return absl::InvalidArgumentError("num_clients must be at least 1");
  }
  if (min_client_size < 1) {
    return absl::InvalidArgumentError("min_client_size must be at least 1");
  }
  return absl::OkStatus();
}

double Sensitivity(double clip_norm, int min_client_size) {
  return 2.0 * clip_norm / static_cast<double>(min_client_size);
}

absl::StatusOr<double> SingleRoundDelta(double epsilon, double sensitivity,
                                        double noise_stddev) {
  if (!(noise_stddev > 0.0)) {
    return absl::InvalidArgumentError("noise standard deviation must be positive");
  }
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  return GaussianDelta(epsilon, sensitivity / noise_stddev);
}

absl::StatusOr<double> ComposedDelta(double epsilon, double noise_multiplier,
                                     int num_clients, int rounds) {
  if (!(noise_multiplier > 0.0)) {
    return absl::InvalidArgumentError("sigma_g must be positive");
  }
  if (num_clients < 1 || rounds < 1) {
    return absl::InvalidArgumentError("num_clients and rounds must be >= 1");
  }
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be non-negative");
  }
  const double q =
      std::sqrt(static_cast<double>(num_clients) * rounds) / noise_multiplier;
  return GaussianDelta(epsilon, 2.0 * q);
}

absl::StatusOr<double> CalibrateSigma(double epsilon, double delta,
                                      int num_clients, int rounds) {
  PrivacySpec spec{epsilon, delta, rounds, num_clients, 1};
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  auto delta_at = [&](double sigma) {
    return *ComposedDelta(epsilon, sigma, num_clients, rounds);
  };
  double lo = kMinNoiseMultiplier;
  double hi = kMaxNoiseMultiplier;
  if (delta_at(hi) > delta) {
    return absl::OutOfRangeError(absl::StrCat(
        "(", epsilon, ", ", delta, ") is unreachable with sigma_g <= ", hi));
  }
  if (delta_at(lo) <= delta) return lo;
  // Invariant: delta_at(lo) > delta >= delta_at(hi).
  while (hi / lo > 1.0 + 1e-6) {
    const double mid = std::sqrt(lo * hi);
    if (delta_at(mid) <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

absl::StatusOr<PrivacyBudget> ComposeAdaptive(
    std::span<const PrivacyBudget> per_round) {
  if (per_round.empty()) {
    return absl::InvalidArgumentError("no per-round budgets to compose");
  }
  PrivacyBudget total;
  for (size_t t = 0; t < per_round.size(); ++t) {
    const PrivacyBudget& b = per_round[t];
    if (!(b.epsilon >= 0.0) || !(b.delta >= 0.0 && b.delta < 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("round ", t, " budget is invalid"));
    }
    total.epsilon += b.epsilon;
    total.delta += b.delta;
  }
  return total;
}

absl::StatusOr<NoiseFloor> ComputeNoiseFloor(
    double clip_norm, double noise_multiplier, int num_clients,
    std::span<const int> client_sizes) {
  if (num_clients < 1 ||
      client_sizes.size() != static_cast<size_t>(num_clients)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", num_clients, " client sizes, got ",
                     client_sizes.size()));
  }
  if (!(clip_norm > 0.0) || !(noise_multiplier >= 0.0)) {
    return absl::InvalidArgumentError(
        "clip_cg must be positive and sigma_g non-negative");
  }
  double inverse_sq_sum = 0.0;
  int min_size = client_sizes.front();
  for (int size : client_sizes) {
    if (size < 1) {
      return absl::InvalidArgumentError("client sizes must be positive");
    }
    inverse_sq_sum += 1.0 / (static_cast<double>(size) * size);
    min_size = std::min(min_size, size);
  }
  const double scale = clip_norm * noise_multiplier;
  const double n = static_cast<double>(num_clients);
  NoiseFloor floor;
  floor.variance = scale * scale / (n * n * n) * inverse_sq_sum;
  floor.uniform_bound =
      scale * scale / (n * n * static_cast<double>(min_size) * min_size);
  return floor;
}

absl::StatusOr<FloorResult> TheoreticalFloor(const FloorInputs& in) {
  if (!(in.mu > 0.0) || !(in.smoothness > 0.0) || !(in.eta > 0.0) ||
      !(in.rho > 0.0) || !(in.tau1 > 0.0) || !(in.tau2 > 0.0)) {
    return absl::InvalidArgumentError(
        "mu, L, eta, rho, tau1 and tau2 must be positive");
  }
  FloorResult out;
  out.c_grad = 1.0 / in.rho - 0.5 * (in.tau1 + in.tau2);
  if (!(out.c_grad > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("c_grad = ", out.c_grad, " must be positive"));
  }
  out.rate = 1.0 - 2.0 * in.mu * in.eta * out.c_grad;
  if (!(out.rate > 0.0 && out.rate < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("contraction factor ", out.rate, " is outside (0,1)"));
  }
  const double rho_sq = in.rho * in.rho;
  const double noise_trace = in.dim * in.noise_variance;
  const double clip_sq = in.clip_norm * in.clip_norm;
  out.momentum_bound = clip_sq + (1.0 - in.beta) * noise_trace;
  out.gamma =
      in.eta * in.grad_max * in.grad_max * out.momentum_bound / rho_sq +
      in.eta * in.zeta_max * in.zeta_max / (2.0 * in.tau1 * rho_sq) +
      in.eta * noise_trace / (2.0 * in.tau2 * rho_sq) +
      in.smoothness * in.eta * in.eta * (clip_sq + noise_trace) /
          (2.0 * rho_sq);
  out.floor = out.gamma / (2.0 * in.mu * in.eta * out.c_grad);
  return out;
}

}  // namespace fedsofim
