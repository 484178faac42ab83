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
#include "fedsofim/task/synthetic_features.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace fedsofim {

absl::StatusOr<std::vector<Example>> MakeSyntheticFeatures(
    const SyntheticFeatureSpec& spec) {
  if (spec.num_examples < 1 || spec.feature_dim < 1 || spec.num_classes < 2) {
    return absl::InvalidArgumentError(
        "need num_examples >= 1, feature_dim >= 1 and num_classes >= 2");
  }
  if (!(spec.feature_scale > 0.0)) {
    return absl::InvalidArgumentError("feature_scale must be positive");
  }
  if (!(spec.feature_offset >= 0.0)) {
    return absl::InvalidArgumentError("feature_offset must be non-negative");
  }
  if (!(spec.condition_number >= 1.0)) {
    return absl::InvalidArgumentError("condition_number must be at least 1");
  }
  const int dim = spec.feature_dim;
  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> normal;

  std::vector<double> axis_scale(dim, 1.0);
  for (int j = 1; j < dim; ++j) {
    axis_scale[j] = std::pow(spec.condition_number,
                             -0.5 * j / static_cast<double>(dim - 1));
  }
  std::vector<std::vector<double>> means(spec.num_classes,
                                         std::vector<double>(dim));
  for (auto& mean : means) {
    for (double& v : mean) v = spec.class_separation * normal(engine);
  }
  // Shared mean shift, as in post-activation features with a large common
  // component.
  std::vector<double> offset(dim);
  double offset_norm = 0.0;
  for (double& v : offset) {
    v = normal(engine);
    offset_norm += v * v;
  }
  offset_norm = std::sqrt(offset_norm);
  for (double& v : offset) v *= spec.feature_offset / offset_norm;
  std::uniform_int_distribution<int> label_dist(0, spec.num_classes - 1);
  std::vector<Example> examples(spec.num_examples);
  for (Example& example : examples) {
    example.label = label_dist(engine);
    example.features.resize(dim);
    for (int j = 0; j < dim; ++j) {
      example.features[j] =
          spec.feature_scale *
          (axis_scale[j] * (means[example.label][j] + normal(engine)) +
           offset[j]);
    }
  }
  return examples;
}

double FeatureConditionNumber(std::span<const Example> examples) {
  if (examples.empty()) return 0.0;
  const int dim = static_cast<int>(examples.front().features.size());
  Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
  Eigen::VectorXd augmented(dim + 1);
  for (const Example& example : examples) {
    for (int j = 0; j < dim; ++j) augmented[j] = example.features[j];
    augmented[dim] = 1.0;
    moment.selfadjointView<Eigen::Lower>().rankUpdate(augmented);
  }
  moment /= static_cast<double>(examples.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(
      moment.selfadjointView<Eigen::Lower>(), Eigen::EigenvaluesOnly);
  return eigen.eigenvalues().maxCoeff() / eigen.eigenvalues().minCoeff();
}

}  // namespace fedsofim
