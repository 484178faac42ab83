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
#ifndef FEDSOFIM_HARNESS_GRID_H_
#define FEDSOFIM_HARNESS_GRID_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedsofim/core/config.h"
#include "fedsofim/harness/experiment.h"
#include "fedsofim/task/objective.h"

namespace fedsofim {

// Candidate step sizes and clipping radii. Every pair is one grid cell.
struct GridSpec {
  std::vector<double> etas;
  std::vector<double> clip_norms;

  // The sweep used for all methods in the reference experiments.
  static GridSpec Default();
  absl::Status Validate() const;
};

struct GridCell {
  double eta = 0.0;
  double clip_norm = 0.0;
  // Final-row values per seed.
  std::vector<double> final_accuracy;
  std::vector<double> final_loss;
  // Mean final test accuracy when the task reports accuracy, otherwise the
  // negated mean final training loss. Non-finite runs score -infinity.
  double score = 0.0;
};

struct GridResult {
  std::vector<GridCell> cells;
  int best = -1;  // index into `cells`
  FederatedConfig best_config;
};

// Runs every (eta, C_g) cell of `grid` on `base`, each over `seeds` noise
// seeds (master_seed, master_seed + 1, ...), and selects the highest score.
// Ties go to the smaller eta, then to the smaller C_g. The plan's output path
// is ignored.
absl::StatusOr<GridResult> GridSearch(const ExperimentPlan& base,
                                      const GridSpec& grid, int seeds);
absl::StatusOr<GridResult> GridSearch(const ExperimentPlan& base,
                                      const FederatedObjective& objective,
                                      const GridSpec& grid, int seeds);

// One row per cell: eta, clip_cg, mean accuracy, mean loss, score, selected.
std::string FormatGridCsv(const GridResult& result);

}  // namespace fedsofim

#endif  // FEDSOFIM_HARNESS_GRID_H_
