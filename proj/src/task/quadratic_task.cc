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
#include "fedsofim/task/quadratic_task.h"

#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "absl/strings/str_cat.h"

namespace fedsofim {

absl::StatusOr<QuadraticTask> QuadraticTask::Create(
    std::vector<QuadraticShard> shards) {
  if (shards.empty()) return absl::InvalidArgumentError("no shards");
  const Eigen::Index d = shards.front().center.size();
  if (d < 1) return absl::InvalidArgumentError("dimension must be positive");
  Eigen::MatrixXd curvature_sum = Eigen::MatrixXd::Zero(d, d);
  ParameterVector rhs = ParameterVector::Zero(d);
  for (size_t i = 0; i < shards.size(); ++i) {
    const QuadraticShard& shard = shards[i];
    if (shard.center.size() != d || shard.curvature.rows() != d ||
        shard.curvature.cols() != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("shard ", i, " has inconsistent dimensions"));
    }
    if (shard.num_samples < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("shard ", i, " must hold at least one sample"));
    }
    if (!shard.curvature.isApprox(shard.curvature.transpose(), 1e-12)) {
      return absl::InvalidArgumentError(
          absl::StrCat("shard ", i, " curvature is not symmetric"));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(shard.curvature);
    if (llt.info() != Eigen::Success) {
      return absl::InvalidArgumentError(
          absl::StrCat("shard ", i, " curvature is not positive definite"));
    }
    curvature_sum += shard.curvature;
    rhs += shard.curvature * shard.center;
  }
  const double n = static_cast<double>(shards.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(curvature_sum / n,
                                                       Eigen::EigenvaluesOnly);

  QuadraticTask task;
  task.dimension_ = static_cast<int>(d);
  task.mu_ = eigen.eigenvalues().minCoeff();
  task.smoothness_ = eigen.eigenvalues().maxCoeff();
  task.optimum_ = curvature_sum.ldlt().solve(rhs);
  task.shards_ = std::move(shards);
  task.optimal_loss_ = task.TrainLoss(task.optimum_);
  return task;
}

absl::StatusOr<ParameterVector> QuadraticTask::ShardGradient(
    const ParameterVector& theta, int client) const {
  if (theta.size() != dimension_) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter dimension ", theta.size(),
                     " does not match task dimension ", dimension_));
  }
  if (client < 0 || client >= num_clients()) {
    return absl::OutOfRangeError(absl::StrCat("no client ", client));
  }
  const QuadraticShard& shard = shards_[client];
  return ParameterVector(shard.curvature * (theta - shard.center));
}

void QuadraticTask::ExampleGradient(const ParameterVector& theta, int client,
                                    int /*index*/,
                                    ParameterVector& grad) const {
  const QuadraticShard& shard = shards_[client];
  grad.noalias() = shard.curvature * (theta - shard.center);
}

double QuadraticTask::TrainLoss(const ParameterVector& theta) const {
  double total = 0.0;
  for (const QuadraticShard& shard : shards_) {
    const ParameterVector diff = theta - shard.center;
    total += 0.5 * diff.dot(shard.curvature * diff);
  }
  return total / static_cast<double>(shards_.size());
}

ParameterVector QuadraticTask::FullGradient(const ParameterVector& theta) const {
  ParameterVector total = ParameterVector::Zero(dimension_);
  for (const QuadraticShard& shard : shards_) {
    total += shard.curvature * (theta - shard.center);
  }
  return total / static_cast<double>(shards_.size());
}

absl::StatusOr<QuadraticTask> MakeSyntheticQuadratic(
    const QuadraticSpec& spec) {
  if (spec.dim < 1) return absl::InvalidArgumentError("dim must be positive");
  if (spec.num_clients < 1) {
    return absl::InvalidArgumentError("num_clients must be positive");
  }
  if (!(spec.mu > 0.0)) return absl::InvalidArgumentError("mu must be positive");
  if (spec.mu > spec.smoothness) {
    return absl::InvalidArgumentError("mu must not exceed L");
  }
  if (spec.dim == 1 && spec.mu != spec.smoothness) {
    return absl::InvalidArgumentError("d = 1 requires mu == L");
  }
  if (!(spec.heterogeneity >= 0.0)) {
    return absl::InvalidArgumentError("heterogeneity must be non-negative");
  }
  const int d = spec.dim;
  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(spec.mu, spec.smoothness);

  Eigen::MatrixXd gaussian(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) gaussian(r, c) = normal(engine);
  }
  const Eigen::MatrixXd basis =
      Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian).householderQ();

  ParameterVector shared_center(d);
  for (int k = 0; k < d; ++k) shared_center[k] = normal(engine);

  std::vector<QuadraticShard> shards(spec.num_clients);
  for (QuadraticShard& shard : shards) {
    ParameterVector spectrum(d);
    spectrum[0] = spec.mu;
    spectrum[d - 1] = spec.smoothness;
    for (int k = 1; k < d - 1; ++k) spectrum[k] = uniform(engine);
    Eigen::MatrixXd a = basis * spectrum.asDiagonal() * basis.transpose();
    shard.curvature = 0.5 * (a + a.transpose());
    shard.center = shared_center;
    for (int k = 0; k < d; ++k) {
      shard.center[k] += spec.heterogeneity * normal(engine);
    }
    shard.num_samples = spec.samples_per_client;
  }
  return QuadraticTask::Create(std::move(shards));
}

}  // namespace fedsofim
