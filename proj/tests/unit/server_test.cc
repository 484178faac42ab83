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
#include "fedsofim/server/server.h"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fedsofim/oracle/dense_preconditioner.h"
#include "fedsofim/task/quadratic_task.h"
#include "gtest/gtest.h"

namespace fedsofim {
namespace {

ParameterVector Vec(std::initializer_list<double> values) {
  ParameterVector v(static_cast<Eigen::Index>(values.size()));
  int k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

ParameterVector RandomVector(std::mt19937_64& rng, int d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  ParameterVector v(d);
  for (int k = 0; k < d; ++k) v[k] = normal(rng);
  return v;
}

ClientRelease Release(ParameterVector v, int client, int round = 0) {
  return ClientRelease{std::move(v), client, round};
}

TEST(AggregateTest, MeanOfTwoUnitVectors) {
  const std::vector<ClientRelease> releases = {Release(Vec({1.0, 0.0}), 0),
                                               Release(Vec({0.0, 1.0}), 1)};
  const ParameterVector g = Aggregate(releases, 2).value();
  EXPECT_EQ(g[0], 0.5);
  EXPECT_EQ(g[1], 0.5);
}

TEST(AggregateTest, IdenticalReleasesAverageToThemselves) {
  std::vector<ClientRelease> releases;
  for (int i = 0; i < 6; ++i) releases.push_back(Release(Vec({0.5, -2.0}), i));
  const ParameterVector g = Aggregate(releases, 6).value();
  EXPECT_DOUBLE_EQ(g[0], 0.5);
  EXPECT_DOUBLE_EQ(g[1], -2.0);
}

TEST(AggregateTest, MatchesLongDoubleMean) {
  std::mt19937_64 rng(4);
  std::vector<ClientRelease> releases;
  for (int i = 0; i < 7; ++i) releases.push_back(Release(RandomVector(rng, 5, 3.0), i));
  const ParameterVector g = Aggregate(releases, 7).value();
  for (int k = 0; k < 5; ++k) {
    long double sum = 0.0L;
    for (const ClientRelease& r : releases) sum += r.vector[k];
    EXPECT_NEAR(g[k], static_cast<double>(sum / 7.0L), 1e-14);
  }
}

TEST(AggregateTest, RejectsMissingMismatchedOrMixedReleases) {
  std::vector<ClientRelease> releases = {Release(Vec({1.0}), 0),
                                         Release(Vec({1.0}), 1)};
  EXPECT_FALSE(Aggregate(releases, 3).ok());
  EXPECT_FALSE(Aggregate({}, 0).ok());
  releases[1] = Release(Vec({1.0, 2.0}), 1);
  EXPECT_FALSE(Aggregate(releases, 2).ok());
  releases[1] = Release(Vec({1.0}), 1, 4);
  EXPECT_FALSE(Aggregate(releases, 2).ok());
}

TEST(MomentumTest, FirstUpdateFromZero) {
  const ParameterVector m =
      UpdateMomentum(ParameterVector::Zero(2), Vec({1.0, 1.0}), 0.9).value();
  EXPECT_NEAR(m[0], 0.1, 1e-16);
  EXPECT_NEAR(m[1], 0.1, 1e-16);
}

TEST(MomentumTest, ZeroBetaKeepsOnlyCurrentAggregate) {
  const ParameterVector g = Vec({0.3, -7.0, 2.5});
  const ParameterVector m = UpdateMomentum(Vec({9.0, 9.0, 9.0}), g, 0.0).value();
  for (int k = 0; k < 3; ++k) EXPECT_EQ(m[k], g[k]);
}

TEST(MomentumTest, ConstantAggregateFollowsGeometricSeries) {
  const double beta = 0.9;
  const ParameterVector g = Vec({1.5, -0.5});
  ParameterVector m = ParameterVector::Zero(2);
  for (int t = 0; t < 200; ++t) {
    m = UpdateMomentum(m, g, beta).value();
    const double factor = 1.0 - std::pow(beta, t + 1);
    ASSERT_LE((m - factor * g).norm(), 1e-13) << "round " << t;
  }
  EXPECT_LE((m - g).norm(), 1e-8);
}

TEST(MomentumTest, RejectsSizeMismatch) {
  EXPECT_FALSE(UpdateMomentum(Vec({1.0}), Vec({1.0, 2.0}), 0.5).ok());
}

TEST(PreconditionTest, ZeroMomentumScalesByInverseRho) {
  const ParameterVector g = Vec({1.0, -2.0, 4.0});
  const ParameterVector hg = PreconditionApply(ParameterVector::Zero(3), g, 0.25);
  for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(hg[k], 4.0 * g[k]);
}

TEST(PreconditionTest, HandInvertedDiagonalCase) {
  // rho I + M M^T = diag(1.5, 0.5); its inverse applied to (3, 4).
  const ParameterVector hg = PreconditionApply(Vec({1.0, 0.0}), Vec({3.0, 4.0}), 0.5);
  EXPECT_NEAR(hg[0], 2.0, 1e-15);
  EXPECT_NEAR(hg[1], 8.0, 1e-15);
}

TEST(PreconditionTest, DenseOracleHandCases) {
  const Eigen::MatrixXd zero =
      oracle::DensePreconditioner(ParameterVector::Zero(3), 0.5).value();
  EXPECT_LE((zero - 2.0 * Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-15);
  const Eigen::MatrixXd diag =
      oracle::DensePreconditioner(Vec({1.0, 0.0}), 0.5).value();
  EXPECT_NEAR(diag(0, 0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(diag(1, 1), 2.0, 1e-15);
  EXPECT_NEAR(diag(0, 1), 0.0, 1e-15);
  EXPECT_FALSE(oracle::DensePreconditioner(Vec({1.0}), 0.0).ok());
  EXPECT_FALSE(
      oracle::DensePreconditioner(
          ParameterVector::Zero(oracle::kMaxDenseDimension + 1), 1.0)
          .ok());
}

TEST(PreconditionTest, MatchesDenseInverse) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(1, 64);
  // The dense LU loses about log10(1 + ||M||^2 / rho) digits, so the sampled
  // condition numbers stay below 1e5 to keep the oracle itself accurate.
  std::uniform_real_distribution<double> log_scale(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = dim(rng);
    const double rho = std::pow(10.0, log_scale(rng));
    const double norm = std::pow(10.0, log_scale(rng));
    const ParameterVector m =
        RandomVector(rng, d, norm / std::sqrt(static_cast<double>(d)));
    const ParameterVector g = RandomVector(rng, d, 1.0);
    const ParameterVector expected =
        oracle::DensePreconditioner(m, rho).value() * g;
    const ParameterVector got = PreconditionApply(m, g, rho);
    ASSERT_LE((got - expected).norm(), 1e-10 * expected.norm())
        << "trial " << trial;
  }
}

TEST(PreconditionTest, ApplyIntoReusesBuffer) {
  const ParameterVector m = Vec({0.2, 0.4, -1.0});
  const ParameterVector g = Vec({1.0, 2.0, 3.0});
  ParameterVector out(3);
  const double* data = out.data();
  PreconditionApplyInto(m, g, 0.5, out);
  EXPECT_EQ(out.data(), data);
  EXPECT_EQ(out, PreconditionApply(m, g, 0.5));
}

TEST(SofimStepTest, ZeroAggregateIsFixedPoint) {
  const ServerState state = ServerState::Initial(Vec({1.0, -2.0}));
  const ServerState next =
      SofimStep(state, ParameterVector::Zero(2), 0.5, {0.5, 0.9}).value();
  EXPECT_EQ(next.theta, state.theta);
  EXPECT_EQ(next.momentum.norm(), 0.0);
  EXPECT_EQ(next.round, 0);
}

TEST(SofimStepTest, LargeRhoWithoutMomentumIsScaledGradientStep) {
  const double rho = 1e6;
  const double eta = 0.3;
  std::mt19937_64 rng(2);
  const ServerState state = ServerState::Initial(RandomVector(rng, 8, 1.0));
  const ParameterVector g = RandomVector(rng, 8, 1.0);
  const ServerState next = SofimStep(state, g, eta, {rho, 0.0}).value();
  const ParameterVector expected = state.theta - (eta / rho) * g;
  // With M = G the step is (eta / rho) G (1 - ||G||^2 / (rho + ||G||^2)).
  const double shrink = g.squaredNorm() / (rho + g.squaredNorm());
  EXPECT_NEAR((next.theta - expected).norm(), (eta / rho) * g.norm() * shrink,
              1e-3 * (eta / rho) * g.norm() * shrink);
  EXPECT_LE((next.theta - expected).norm(), 1e-6 * expected.norm());
}

TEST(SofimStepTest, ComposesMomentumPreconditionerAndStepLikeDenseOracle) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> dim(1, 32);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = dim(rng);
    ServerState state;
    state.theta = RandomVector(rng, d, 1.0);
    state.momentum = RandomVector(rng, d, 2.0);
    state.round = 3;
    const ParameterVector g = RandomVector(rng, d, 1.0);
    const double eta = 0.2;
    const PreconditionerParams params{0.5, 0.9};
    const ServerState next = SofimStep(state, g, eta, params).value();

    const ParameterVector m = 0.9 * state.momentum + 0.1 * g;
    const Eigen::MatrixXd h = oracle::DensePreconditioner(m, 0.5).value();
    const ParameterVector theta = state.theta - eta * (h * g);
    ASSERT_LE((next.momentum - m).norm(), 1e-14 * (1.0 + m.norm()));
    ASSERT_LE((next.theta - theta).norm(), 1e-10 * (1.0 + theta.norm()));
    ASSERT_EQ(next.round, 4);
  }
}

TEST(SofimStepTest, ConfigOverloadUsesConfiguredRhoAndBeta) {
  FederatedConfig config;
  config.eta = 0.7;
  config.rho = 2.0;
  config.beta = 0.5;
  const ServerState state = ServerState::Initial(Vec({1.0, 1.0}));
  const ParameterVector g = Vec({1.0, -3.0});
  EXPECT_EQ(SofimStep(state, g, config).value().theta,
            SofimStep(state, g, 0.7, {2.0, 0.5}).value().theta);
}

TEST(SofimStepTest, RejectsBadInputs) {
  const ServerState state = ServerState::Initial(Vec({1.0, 1.0}));
  EXPECT_FALSE(SofimStep(state, Vec({1.0}), 0.1, {0.5, 0.9}).ok());
  EXPECT_FALSE(SofimStep(state, Vec({1.0, 1.0}), 0.1, {0.0, 0.9}).ok());
}

TEST(FedGdStepTest, Arithmetic) {
  ServerState state = ServerState::Initial(Vec({1.0, 1.0}));
  const ServerState next = FedGdStep(state, Vec({2.0, -2.0}), 0.5).value();
  EXPECT_EQ(next.theta[0], 0.0);
  EXPECT_EQ(next.theta[1], 2.0);
  EXPECT_EQ(next.momentum.norm(), 0.0);
}

TEST(FedGdStepTest, ZeroAggregateLeavesThetaUnchanged) {
  const ServerState state = ServerState::Initial(Vec({4.0, -1.0}));
  EXPECT_EQ(FedGdStep(state, ParameterVector::Zero(2), 3.0).value().theta,
            state.theta);
}

TEST(FedGdStepTest, DescendsQuadraticBelowTwoOverL) {
  QuadraticSpec spec;
  spec.dim = 10;
  spec.num_clients = 5;
  spec.mu = 0.5;
  spec.smoothness = 20.0;
  spec.seed = 6;
  const QuadraticTask task = MakeSyntheticQuadratic(spec).value();
  std::mt19937_64 rng(1);
  ServerState state = ServerState::Initial(RandomVector(rng, 10, 5.0));
  const double eta = 1.9 / task.smoothness();
  double loss = task.TrainLoss(state.theta);
  for (int t = 0; t < 50; ++t) {
    state = FedGdStep(state, task.FullGradient(state.theta), eta).value();
    const double next = task.TrainLoss(state.theta);
    ASSERT_LT(next, loss) << "step " << t;
    loss = next;
  }
}

}  // namespace
}  // namespace fedsofim
