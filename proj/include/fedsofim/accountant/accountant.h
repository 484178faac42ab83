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
#ifndef FEDSOFIM_ACCOUNTANT_ACCOUNTANT_H_
#define FEDSOFIM_ACCOUNTANT_ACCOUNTANT_H_

#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fedsofim {

// Privacy target for a T-round run with full participation. `min_client_size`
// is |D_min|, used uniformly for every client.
struct PrivacySpec {
  double epsilon = 1.0;
  double delta = 1e-5;
  int rounds = 1;
  int num_clients = 1;
  int min_client_size = 1;

  absl::Status Validate() const;
};

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

// l2 sensitivity of a released client update under replace-one adjacency:
// 2 C_g / |D_min|.
double Sensitivity(double clip_norm, int min_client_size);

// Exact delta(epsilon) of the Gaussian mechanism with the given sensitivity
// and noise standard deviation, from the hockey-stick divergence:
//
//   Phi(-eps sigma / Delta + Delta / (2 sigma))
//     - e^eps Phi(-eps sigma / Delta - Delta / (2 sigma))
//
// The second term is evaluated as exp(eps + log Phi(.)).
absl::StatusOr<double> SingleRoundDelta(double epsilon, double sensitivity,
                                        double noise_stddev);

// delta(epsilon) after T rounds of the client release with noise multiplier
// sigma_g and n clients. With q = sqrt(n T) / sigma_g:
//
//   Phi(q - eps / (2 q)) - e^eps Phi(-q - eps / (2 q))
absl::StatusOr<double> ComposedDelta(double epsilon, double noise_multiplier,
                                     int num_clients, int rounds);

// Bracket searched by CalibrateSigma.
inline constexpr double kMinNoiseMultiplier = 1e-3;
inline constexpr double kMaxNoiseMultiplier = 1e6;

// Smallest sigma_g in the bracket with ComposedDelta(epsilon, sigma_g) <=
// delta, found by log-scale bisection to 1e-6 relative width. The result
// satisfies the target and sigma_g * (1 - 1e-3) does not.
absl::StatusOr<double> CalibrateSigma(double epsilon, double delta,
                                      int num_clients, int rounds);

// Basic sequential composition: (sum eps_t, sum delta_t).
absl::StatusOr<PrivacyBudget> ComposeAdaptive(
    std::span<const PrivacyBudget> per_round);

struct NoiseFloor {
  // nu_t^2 = (C_g sigma_g)^2 / n^3 * sum_i |D_i|^-2.
  double variance = 0.0;
  // (C_g sigma_g)^2 / (n^2 m_min^2), an upper bound on `variance`.
  double uniform_bound = 0.0;
};

absl::StatusOr<NoiseFloor> ComputeNoiseFloor(double clip_norm,
                                             double noise_multiplier,
                                             int num_clients,
                                             std::span<const int> client_sizes);

struct FloorInputs {
  double mu = 1.0;
  double smoothness = 1.0;  // L
  double eta = 0.1;
  double rho = 0.5;
  double beta = 0.9;
  double clip_norm = 1.0;
  double noise_variance = 0.0;  // nu^2
  int dim = 1;
  double zeta_max = 0.0;
  double grad_max = 0.0;  // G_max
  double tau1 = 1.0;
  double tau2 = 1.0;
};

struct FloorResult {
  double gamma = 0.0;
  double floor = 0.0;  // gamma / (2 mu eta c_grad)
  double rate = 0.0;   // 1 - 2 mu eta c_grad
  double c_grad = 0.0;  // 1/rho - (tau1 + tau2)/2
  double momentum_bound = 0.0;  // C_g^2 + (1 - beta) d nu^2
};

// Additive constant of the one-step descent bound
//
//   Gamma = eta G_max^2 Mbar^2 / rho^2 + eta zeta_max^2 / (2 tau1 rho^2)
//           + eta d nu^2 / (2 tau2 rho^2) + L eta^2 (C_g^2 + d nu^2) / (2 rho^2)
//
// with the limiting neighbourhood Gamma / (2 mu eta c_grad) and contraction
// factor r. Fails unless c_grad > 0 and r lies in (0, 1).
absl::StatusOr<FloorResult> TheoreticalFloor(const FloorInputs& inputs);

}  // namespace fedsofim

#endif  // FEDSOFIM_ACCOUNTANT_ACCOUNTANT_H_
