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
#ifndef FEDSOFIM_CORE_METRICS_H_
#define FEDSOFIM_CORE_METRICS_H_

#include <optional>
#include <vector>

namespace fedsofim {

// Metrics recorded after a server update. `round` counts completed rounds, so
// the row written after the update of round index t carries round = t + 1.
struct RoundMetrics {
  int round = 0;
  double train_loss = 0.0;
  double test_accuracy = 0.0;
  double aggregate_grad_norm = 0.0;
  // Present only for tasks with a known minimizer.
  std::optional<double> suboptimality_gap;
  double elapsed_seconds = 0.0;

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

using MetricsTable = std::vector<RoundMetrics>;

}  // namespace fedsofim

#endif  // FEDSOFIM_CORE_METRICS_H_
