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
#ifndef FEDSOFIM_ORACLE_DENSE_PRECONDITIONER_H_
#define FEDSOFIM_ORACLE_DENSE_PRECONDITIONER_H_

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "fedsofim/core/types.h"

namespace fedsofim::oracle {

// Largest dimension the dense oracle accepts.
inline constexpr int kMaxDenseDimension = 256;

// Forms rho I + M M^T explicitly and inverts it with a pivoted LU
// factorization. Verification use only; the training library does not link
// this target.
absl::StatusOr<Eigen::MatrixXd> DensePreconditioner(
    const ParameterVector& momentum, double rho);

}  // namespace fedsofim::oracle

#endif  // FEDSOFIM_ORACLE_DENSE_PRECONDITIONER_H_
