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
#ifndef FEDSOFIM_TASK_QUADRATIC_TASK_H_
#define FEDSOFIM_TASK_QUADRATIC_TASK_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "fedsofim/core/types.h"
#include "fedsofim/task/objective.h"

namespace fedsofim {

// Client i holds `num_samples` identical records, each with loss
// 1/2 (theta - center)^T curvature (theta - center).
struct QuadraticShard {
  Eigen::MatrixXd curvature;
  ParameterVector center;
  int num_samples = 1;
};

// F(theta) = (1/n) sum_i 1/2 (theta - c_i)^T A_i (theta - c_i).
//
// mu and L are the extreme eigenvalues of the mean curvature, so F is
// L-smooth and mu-strongly convex with exactly these constants.
class QuadraticTask final : public FederatedObjective {
 public:
  static absl::StatusOr<QuadraticTask> Create(
      std::vector<QuadraticShard> shards);

  double mu() const { return mu_; }
  double smoothness() const { return smoothness_; }
  const ParameterVector& optimum() const { return optimum_; }
  double optimal_loss() const { return optimal_loss_; }
  const std::vector<QuadraticShard>& shards() const { return shards_; }

  // A_i (theta - c_i).
  absl::StatusOr<ParameterVector> ShardGradient(const ParameterVector& theta,
                                                int client) const;

  int dimension() const override { return dimension_; }
  int num_clients() const override { return static_cast<int>(shards_.size()); }
  int client_size(int client) const override {
    return shards_[client].num_samples;
  }
  void ExampleGradient(const ParameterVector& theta, int client, int index,
                       ParameterVector& grad) const override;
  double TrainLoss(const ParameterVector& theta) const override;
  ParameterVector FullGradient(const ParameterVector& theta) const override;
  std::optional<double> OptimalLoss() const override { return optimal_loss_; }

 private:
  QuadraticTask() = default;

  std::vector<QuadraticShard> shards_;
  int dimension_ = 0;
  double mu_ = 0.0;
  double smoothness_ = 0.0;
  ParameterVector optimum_;
  double optimal_loss_ = 0.0;
};

struct QuadraticSpec {
  int dim = 20;
  int num_clients = 20;
  double mu = 1.0;
  double smoothness = 100.0;
  // Standard deviation of the client centers around the shared center.
  double heterogeneity = 1.0;
  int samples_per_client = 10;
  uint64_t seed = 0;
};

// All curvatures share a random orthonormal eigenbasis Q: A_i = Q diag(l_i) Q^T
// with l_i,0 = mu, l_i,d-1 = L and the remaining eigenvalues uniform in
// [mu, L]. Centers are c + heterogeneity * z_i with c, z_i standard normal.
// d = 1 requires mu == L.
absl::StatusOr<QuadraticTask> MakeSyntheticQuadratic(const QuadraticSpec& spec);

}  // namespace fedsofim

#endif  // FEDSOFIM_TASK_QUADRATIC_TASK_H_
