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
#ifndef FEDSOFIM_TASK_SOFTMAX_TASK_H_
#define FEDSOFIM_TASK_SOFTMAX_TASK_H_

#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedsofim/core/types.h"
#include "fedsofim/task/dataset.h"
#include "fedsofim/task/objective.h"

namespace fedsofim {

struct LossAndAccuracy {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Multinomial logistic head on frozen features with an l2 penalty:
//
//   l(theta; x, y) = logsumexp_c(w_c . x + b_c) - (w_y . x + b_y)
//                    + (l2_lambda / 2) ||theta||^2
//
// theta is laid out class-major, (feature_dim + 1) entries per class with the
// bias last, so d = num_classes * (feature_dim + 1). Biases are regularized
// together with the weights.
class SoftmaxHeadTask {
 public:
  static absl::StatusOr<SoftmaxHeadTask> Create(int num_classes,
                                                int feature_dim,
                                                double l2_lambda);

  int num_classes() const { return num_classes_; }
  int feature_dim() const { return feature_dim_; }
  double l2_lambda() const { return l2_lambda_; }
  int dimension() const { return num_classes_ * (feature_dim_ + 1); }

  absl::Status CheckParameters(const ParameterVector& theta) const;
  absl::Status CheckExample(const Example& example) const;

  absl::StatusOr<ParameterVector> PerExampleGradient(
      const ParameterVector& theta, const Example& example) const;
  absl::StatusOr<double> ExampleLoss(const ParameterVector& theta,
                                     const Example& example) const;

  // Argmax class; ties resolve to the lowest index.
  int Predict(const ParameterVector& theta,
              std::span<const double> features) const;

  // Mean loss and argmax accuracy over `examples`.
  absl::StatusOr<LossAndAccuracy> Evaluate(
      const ParameterVector& theta, std::span<const Example> examples) const;

  // Unchecked kernels; callers validate shapes first.
  void GradientInto(const ParameterVector& theta, const Example& example,
                    ParameterVector& grad) const;
  double LossUnchecked(const ParameterVector& theta,
                       const Example& example) const;

 private:
  SoftmaxHeadTask(int num_classes, int feature_dim, double l2_lambda)
      : num_classes_(num_classes),
        feature_dim_(feature_dim),
        l2_lambda_(l2_lambda) {}

  // Writes the logits into `logits` and returns their log-sum-exp.
  double Logits(const ParameterVector& theta, std::span<const double> x,
                std::vector<double>& logits) const;

  int num_classes_;
  int feature_dim_;
  double l2_lambda_;
};

// Softmax head trained across clients that each hold a ClientDataset.
class SoftmaxObjective final : public FederatedObjective {
 public:
  static absl::StatusOr<SoftmaxObjective> Create(
      SoftmaxHeadTask task, std::vector<ClientDataset> clients,
      std::vector<Example> test_set);

  const SoftmaxHeadTask& task() const { return task_; }
  const std::vector<ClientDataset>& clients() const { return clients_; }
  const std::vector<Example>& test_set() const { return test_set_; }

  int dimension() const override { return task_.dimension(); }
  int num_clients() const override {
    return static_cast<int>(clients_.size());
  }
  int client_size(int client) const override {
    return clients_[client].size();
  }
  void ExampleGradient(const ParameterVector& theta, int client, int index,
                       ParameterVector& grad) const override;
  double TrainLoss(const ParameterVector& theta) const override;
  ParameterVector FullGradient(const ParameterVector& theta) const override;
  // Accuracy on the held-out set, or on the union of client data when no
  // held-out set was supplied.
  std::optional<double> TestAccuracy(
      const ParameterVector& theta) const override;

 private:
  SoftmaxObjective(SoftmaxHeadTask task, std::vector<ClientDataset> clients,
                   std::vector<Example> test_set)
      : task_(task),
        clients_(std::move(clients)),
        test_set_(std::move(test_set)) {}

  SoftmaxHeadTask task_;
  std::vector<ClientDataset> clients_;
  std::vector<Example> test_set_;
};

}  // namespace fedsofim

#endif  // FEDSOFIM_TASK_SOFTMAX_TASK_H_
