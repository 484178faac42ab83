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
#ifndef FEDSOFIM_CORE_TYPES_H_
#define FEDSOFIM_CORE_TYPES_H_

#include <Eigen/Core>

namespace fedsofim {

// The model and every gradient-shaped quantity (aggregates, releases,
// momentum) live in R^d.
using ParameterVector = Eigen::VectorXd;

// Server-side optimizer state.
//
// `round` is the index of the last completed server update. A fresh state has
// round == -1 and an all-zero momentum buffer (M_{-1} = 0). After the update
// of round t, `momentum` holds M_t and `theta` holds the parameters that will
// be broadcast for round t + 1.
struct ServerState {
  ParameterVector theta;
  ParameterVector momentum;
  int round = -1;

  static ServerState Initial(ParameterVector theta0) {
    ServerState state;
    state.momentum = ParameterVector::Zero(theta0.size());
    state.theta = std::move(theta0);
    return state;
  }

  int dimension() const { return static_cast<int>(theta.size()); }
};

}  // namespace fedsofim

#endif  // FEDSOFIM_CORE_TYPES_H_
