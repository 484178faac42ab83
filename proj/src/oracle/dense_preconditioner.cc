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
#include "fedsofim/oracle/dense_preconditioner.h"

#include <Eigen/LU>

#include "absl/strings/str_cat.h"

namespace fedsofim::oracle {

absl::StatusOr<Eigen::MatrixXd> DensePreconditioner(
    const ParameterVector& momentum, double rho) {
  const Eigen::Index d = momentum.size();
  if (d < 1 || d > kMaxDenseDimension) {
    return absl::InvalidArgumentError(
        absl::StrCat("dense oracle supports 1 <= d <= ", kMaxDenseDimension,
                     ", got ", d));
  }
  if (!(rho > 0.0)) return absl::InvalidArgumentError("rho must be positive");
  Eigen::MatrixXd proxy = rho * Eigen::MatrixXd::Identity(d, d);
  proxy.noalias() += momentum * momentum.transpose();
  return Eigen::MatrixXd(proxy.fullPivLu().inverse());
}

}  // namespace fedsofim::oracle
