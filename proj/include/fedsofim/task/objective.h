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
#ifndef FEDSOFIM_TASK_OBJECTIVE_H_
#define FEDSOFIM_TASK_OBJECTIVE_H_

#include <optional>

#include "fedsofim/core/types.h"

namespace fedsofim {

// A federated empirical-risk objective
//
//   F(theta) = (1/n) sum_i F_i(theta),  F_i = (1/|D_i|) sum_{z in D_i} l(theta; z)
//
// seen from the simulator: which clients exist, how many records each holds
// and the per-record gradient. Implementations are immutable after
// construction and safe to query from several client workers at once.
class FederatedObjective {
 public:
  virtual ~FederatedObjective() = default;

  virtual int dimension() const = 0;
  virtual int num_clients() const = 0;
  virtual int client_size(int client) const = 0;

  // Writes the gradient of the loss of record `index` on `client` into `grad`,
  // which the caller has sized to dimension().
  virtual void ExampleGradient(const ParameterVector& theta, int client,
                               int index, ParameterVector& grad) const = 0;

  virtual double TrainLoss(const ParameterVector& theta) const = 0;
  // Unclipped full gradient of F.
  virtual ParameterVector FullGradient(const ParameterVector& theta) const = 0;

  virtual std::optional<double> TestAccuracy(const ParameterVector&) const {
    return std::nullopt;
  }
  // F(theta*) when the minimizer is known.
  virtual std::optional<double> OptimalLoss() const { return std::nullopt; }

  virtual ParameterVector InitialParameters() const {
    return ParameterVector::Zero(dimension());
  }
};

}  // namespace fedsofim

#endif  // FEDSOFIM_TASK_OBJECTIVE_H_
