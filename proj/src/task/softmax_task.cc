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
#include "fedsofim/task/softmax_task.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace fedsofim {

absl::StatusOr<SoftmaxHeadTask> SoftmaxHeadTask::Create(int num_classes,
                                                        int feature_dim,
                                                        double l2_lambda) {
  if (num_classes < 2) {
    return absl::InvalidArgumentError("num_classes must be at least 2");
  }
  if (feature_dim < 1) {
    return absl::InvalidArgumentError("feature_dim must be at least 1");
  }
  if (!(l2_lambda >= 0.0)) {
    return absl::InvalidArgumentError("l2_lambda must be non-negative");
  }
  return SoftmaxHeadTask(num_classes, feature_dim, l2_lambda);
}

absl::Status SoftmaxHeadTask::CheckParameters(
    const ParameterVector& theta) const {
  if (theta.size() != dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter dimension ", theta.size(),
                     " does not match task dimension ", dimension()));
  }
  return absl::OkStatus();
}

absl::Status SoftmaxHeadTask::CheckExample(const Example& example) const {
  if (static_cast<int>(example.features.size()) != feature_dim_) {
    return absl::InvalidArgumentError(
        absl::StrCat("example has ", example.features.size(),
                     " features, task expects ", feature_dim_));
  }
  if (example.label < 0 || example.label >= num_classes_) {
    return absl::InvalidArgumentError(
        absl::StrCat("label ", example.label, " out of range"));
  }
  return absl::OkStatus();
}

double SoftmaxHeadTask::Logits(const ParameterVector& theta,
                               std::span<const double> x,
                               std::vector<double>& logits) const {
  const int stride = feature_dim_ + 1;
  const Eigen::Map<const Eigen::VectorXd> features(x.data(), feature_dim_);
  logits.resize(num_classes_);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < num_classes_; ++c) {
    const double z = theta.segment(c * stride, feature_dim_).dot(features) +
                     theta[c * stride + feature_dim_];
    logits[c] = z;
    max_logit = std::max(max_logit, z);
  }
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - max_logit);
  return max_logit + std::log(sum);
}

void SoftmaxHeadTask::GradientInto(const ParameterVector& theta,
                                   const Example& example,
                                   ParameterVector& grad) const {
  thread_local std::vector<double> logits;
  const double lse = Logits(theta, example.features, logits);
  const int stride = feature_dim_ + 1;
  const Eigen::Map<const Eigen::VectorXd> features(example.features.data(),
                                                   feature_dim_);
  grad.resize(dimension());
  for (int c = 0; c < num_classes_; ++c) {
    const double residual =
        std::exp(logits[c] - lse) - (c == example.label ? 1.0 : 0.0);
    grad.segment(c * stride, feature_dim_) = residual * features;
    grad[c * stride + feature_dim_] = residual;
  }
  if (l2_lambda_ != 0.0) grad += l2_lambda_ * theta;
}

double SoftmaxHeadTask::LossUnchecked(const ParameterVector& theta,
                                      const Example& example) const {
  thread_local std::vector<double> logits;
  const double lse = Logits(theta, example.features, logits);
  return lse - logits[example.label] +
         0.5 * l2_lambda_ * theta.squaredNorm();
}

absl::StatusOr<ParameterVector> SoftmaxHeadTask::PerExampleGradient(
    const ParameterVector& theta, const Example& example) const {
  if (absl::Status s = CheckParameters(theta); !s.ok()) return s;
  if (absl::Status s = CheckExample(example); !s.ok()) return s;
  ParameterVector grad(dimension());
  GradientInto(theta, example, grad);
  return grad;
}

absl::StatusOr<double> SoftmaxHeadTask::ExampleLoss(
    const ParameterVector& theta, const Example& example) const {
  if (absl::Status s = CheckParameters(theta); !s.ok()) return s;
  if (absl::Status s = CheckExample(example); !s.ok()) return s;
  return LossUnchecked(theta, example);
}

int SoftmaxHeadTask::Predict(const ParameterVector& theta,
                             std::span<const double> features) const {
  thread_local std::vector<double> logits;
  Logits(theta, features, logits);
  int best = 0;
  for (int c = 1; c < num_classes_; ++c) {
    if (logits[c] > logits[best]) best = c;
  }
  return best;
}

absl::StatusOr<LossAndAccuracy> SoftmaxHeadTask::Evaluate(
    const ParameterVector& theta, std::span<const Example> examples) const {
  if (examples.empty()) {
    return absl::InvalidArgumentError("cannot evaluate on an empty dataset");
  }
  if (absl::Status s = CheckParameters(theta); !s.ok()) return s;
  thread_local std::vector<double> logits;
  double loss_sum = 0.0;
  int correct = 0;
  for (const Example& example : examples) {
    if (absl::Status s = CheckExample(example); !s.ok()) return s;
    const double lse = Logits(theta, example.features, logits);
    loss_sum += lse - logits[example.label];
    const int predicted = static_cast<int>(
        std::max_element(logits.begin(), logits.end()) - logits.begin());
    if (predicted == example.label) ++correct;
  }
  const double count = static_cast<double>(examples.size());
  return LossAndAccuracy{
      loss_sum / count + 0.5 * l2_lambda_ * theta.squaredNorm(),
      correct / count};
}

absl::StatusOr<SoftmaxObjective> SoftmaxObjective::Create(
    SoftmaxHeadTask task, std::vector<ClientDataset> clients,
    std::vector<Example> test_set) {
  if (clients.empty()) return absl::InvalidArgumentError("no clients");
  for (size_t i = 0; i < clients.size(); ++i) {
    if (clients[i].examples.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("client ", i, " holds no examples"));
    }
    for (const Example& example : clients[i].examples) {
      if (absl::Status s = task.CheckExample(example); !s.ok()) return s;
    }
  }
  for (const Example& example : test_set) {
    if (absl::Status s = task.CheckExample(example); !s.ok()) return s;
  }
  return SoftmaxObjective(task, std::move(clients), std::move(test_set));
}

void SoftmaxObjective::ExampleGradient(const ParameterVector& theta,
                                       int client, int index,
                                       ParameterVector& grad) const {
  task_.GradientInto(theta, clients_[client].examples[index], grad);
}

double SoftmaxObjective::TrainLoss(const ParameterVector& theta) const {
  double total = 0.0;
  for (const ClientDataset& client : clients_) {
    total += task_.Evaluate(theta, client.examples)->loss;
  }
  return total / static_cast<double>(clients_.size());
}

ParameterVector SoftmaxObjective::FullGradient(
    const ParameterVector& theta) const {
  ParameterVector total = ParameterVector::Zero(dimension());
  ParameterVector client_sum(dimension());
  ParameterVector grad(dimension());
  for (const ClientDataset& client : clients_) {
    client_sum.setZero();
    for (const Example& example : client.examples) {
      task_.GradientInto(theta, example, grad);
      client_sum += grad;
    }
    total += client_sum / static_cast<double>(client.size());
  }
  return total / static_cast<double>(clients_.size());
}

std::optional<double> SoftmaxObjective::TestAccuracy(
    const ParameterVector& theta) const {
  if (!test_set_.empty()) return task_.Evaluate(theta, test_set_)->accuracy;
  int correct = 0;
  int count = 0;
  for (const ClientDataset& client : clients_) {
    for (const Example& example : client.examples) {
      correct += task_.Predict(theta, example.features) == example.label;
      ++count;
    }
  }
  return static_cast<double>(correct) / count;
}

}  // namespace fedsofim
