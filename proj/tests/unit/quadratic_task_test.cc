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

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"

namespace fedsofim {
namespace {

ParameterVector RandomVector(std::mt19937_64& rng, int d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  ParameterVector v(d);
  for (int k = 0; k < d; ++k) v[k] = normal(rng);
  return v;
}

QuadraticTask DefaultTask() {
  QuadraticSpec spec;
  spec.seed = 11;
  return MakeSyntheticQuadratic(spec).value();
}

TEST(QuadraticTaskTest, DefaultConstants) {
  const QuadraticTask task = DefaultTask();
  EXPECT_EQ(task.dimension(), 20);
  EXPECT_EQ(task.num_clients(), 20);
  EXPECT_EQ(task.client_size(3), 10);
  EXPECT_NEAR(task.mu(), 1.0, 1e-10);
  EXPECT_NEAR(task.smoothness(), 100.0, 1e-10);
}

TEST(QuadraticTaskTest, ExampleGradientMatchesFiniteDifferences) {
  const QuadraticTask task = DefaultTask();
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int client = trial % task.num_clients();
    const ParameterVector theta = RandomVector(rng, task.dimension(), 2.0);
    const QuadraticShard& shard = task.shards()[client];
    auto loss = [&](const ParameterVector& t) {
      const ParameterVector diff = t - shard.center;
      return 0.5 * diff.dot(shard.curvature * diff);
    };
    ParameterVector numeric(task.dimension());
    ParameterVector probe = theta;
    for (int k = 0; k < task.dimension(); ++k) {
      const double h = 1e-5;
      probe[k] = theta[k] + h;
      const double up = loss(probe);
      probe[k] = theta[k] - h;
      const double down = loss(probe);
      probe[k] = theta[k];
      numeric[k] = (up - down) / (2.0 * h);
    }
    ParameterVector grad(task.dimension());
    task.ExampleGradient(theta, client, 0, grad);
    worst = std::max(worst, (grad - numeric).norm() / numeric.norm());
  }
  EXPECT_LE(worst, 1e-5);
}

TEST(QuadraticTaskTest, OptimumIsStationaryAndMinimal) {
  const QuadraticTask task = DefaultTask();
  EXPECT_LE(task.FullGradient(task.optimum()).norm(), 1e-9);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const ParameterVector theta =
        task.optimum() + RandomVector(rng, task.dimension(), 0.1);
    EXPECT_GT(task.TrainLoss(theta), task.optimal_loss());
  }
}

TEST(QuadraticTaskTest, StrongConvexityInequality) {
  // ||grad F||^2 >= 2 mu (F - F*) at random points.
  const QuadraticTask task = DefaultTask();
  std::mt19937_64 rng(7);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ParameterVector theta =
        task.optimum() + RandomVector(rng, task.dimension(), 3.0);
    const double lhs = task.FullGradient(theta).squaredNorm();
    const double rhs = 2.0 * task.mu() * (task.TrainLoss(theta) -
                                          task.optimal_loss());
    violations += lhs < rhs * (1.0 - 1e-12);
  }
  EXPECT_EQ(violations, 0);
}

TEST(QuadraticTaskTest, FullGradientIsMeanOfShardGradients) {
  const QuadraticTask task = DefaultTask();
  std::mt19937_64 rng(8);
  const ParameterVector theta = RandomVector(rng, task.dimension(), 1.0);
  ParameterVector mean = ParameterVector::Zero(task.dimension());
  for (int i = 0; i < task.num_clients(); ++i) {
    mean += task.ShardGradient(theta, i).value();
  }
  mean /= task.num_clients();
  EXPECT_LE((mean - task.FullGradient(theta)).norm(), 1e-10);
  EXPECT_FALSE(task.ShardGradient(theta, task.num_clients()).ok());
  EXPECT_FALSE(task.ShardGradient(ParameterVector::Zero(3), 0).ok());
}

TEST(QuadraticTaskTest, HandBuiltTaskSolvesNormalEquations) {
  // F = 1/2 [ (x - 1)^2 + 3 (x + 1)^2 ] / 2 in one dimension: x* = -1/2.
  std::vector<QuadraticShard> shards(2);
  shards[0] = {Eigen::MatrixXd::Constant(1, 1, 1.0),
               ParameterVector::Constant(1, 1.0), 1};
  shards[1] = {Eigen::MatrixXd::Constant(1, 1, 3.0),
               ParameterVector::Constant(1, -1.0), 4};
  const QuadraticTask task = QuadraticTask::Create(shards).value();
  EXPECT_NEAR(task.optimum()[0], -0.5, 1e-15);
  EXPECT_NEAR(task.optimal_loss(), (0.5 * 2.25 + 1.5 * 0.25) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(task.mu(), 2.0);
  EXPECT_DOUBLE_EQ(task.smoothness(), 2.0);
  EXPECT_EQ(task.client_size(1), 4);
}

TEST(QuadraticTaskTest, RejectsInvalidShards) {
  std::vector<QuadraticShard> shards(1);
  shards[0] = {Eigen::MatrixXd::Identity(2, 2), ParameterVector::Zero(3), 1};
  EXPECT_FALSE(QuadraticTask::Create(shards).ok());
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -1.0;
  shards[0] = {indefinite, ParameterVector::Zero(2), 1};
  EXPECT_FALSE(QuadraticTask::Create(shards).ok());
  Eigen::MatrixXd asymmetric(2, 2);
  asymmetric << 2.0, 1.0, 0.0, 2.0;
  shards[0] = {asymmetric, ParameterVector::Zero(2), 1};
  EXPECT_FALSE(QuadraticTask::Create(shards).ok());
  shards[0] = {Eigen::MatrixXd::Identity(2, 2), ParameterVector::Zero(2), 0};
  EXPECT_FALSE(QuadraticTask::Create(shards).ok());
  EXPECT_FALSE(QuadraticTask::Create({}).ok());
}

TEST(QuadraticSpecTest, RejectsInconsistentSpecs) {
  QuadraticSpec spec;
  spec.mu = 10.0;
  spec.smoothness = 1.0;
  EXPECT_FALSE(MakeSyntheticQuadratic(spec).ok());
  spec = {};
  spec.dim = 1;
  EXPECT_FALSE(MakeSyntheticQuadratic(spec).ok());
  spec.smoothness = spec.mu;
  EXPECT_TRUE(MakeSyntheticQuadratic(spec).ok());
}

TEST(QuadraticSpecTest, SeedIsDeterministic) {
  QuadraticSpec spec;
  spec.dim = 5;
  spec.num_clients = 3;
  const QuadraticTask a = MakeSyntheticQuadratic(spec).value();
  const QuadraticTask b = MakeSyntheticQuadratic(spec).value();
  EXPECT_EQ(a.optimum(), b.optimum());
}

}  // namespace
}  // namespace fedsofim
