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
#include "fedsofim/harness/grid.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "fedsofim/core/status_macros.h"

namespace fedsofim {
namespace {

double Mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

std::vector<double> SortedUnique(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

GridSpec GridSpec::Default() {
  return {{0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 2.0, 5.0}, {5.0, 10.0}};
}

absl::Status GridSpec::Validate() const {
  if (etas.empty() || clip_norms.empty()) {
    return absl::InvalidArgumentError("grid lists must be nonempty");
  }
  for (double eta : etas) {
    if (!(eta > 0.0)) return absl::InvalidArgumentError("grid eta must be > 0");
  }
  for (double c : clip_norms) {
    if (!(c > 0.0)) {
      return absl::InvalidArgumentError("grid clip_cg must be > 0");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<GridResult> GridSearch(const ExperimentPlan& base,
                                      const FederatedObjective& objective,
                                      const GridSpec& grid, int seeds) {
  FEDSOFIM_RETURN_IF_ERROR(grid.Validate());
  if (seeds < 1) return absl::InvalidArgumentError("seeds must be >= 1");
  ExperimentPlan plan = base;
  plan.output_path.clear();
  // The noise multiplier does not depend on eta or C_g; resolve it once.
  FEDSOFIM_ASSIGN_OR_RETURN(plan.config.noise_multiplier,
                            ResolveNoiseMultiplier(plan));
  plan.privacy = ExplicitNoise{plan.config.noise_multiplier};

  GridResult result;
  // Cells are visited in ascending (eta, C_g) order so that a strict
  // improvement test implements the tie-break.
  for (double eta : SortedUnique(grid.etas)) {
    for (double clip : SortedUnique(grid.clip_norms)) {
      GridCell cell;
      cell.eta = eta;
      cell.clip_norm = clip;
      bool finite = true;
      bool has_accuracy = true;
      for (int s = 0; s < seeds; ++s) {
        ExperimentPlan run = plan;
        run.config.eta = eta;
        run.config.clip_norm = clip;
        run.config.master_seed = base.config.master_seed + s;
        run.eval_every = run.config.rounds;
        run.record_elapsed = false;
        FEDSOFIM_ASSIGN_OR_RETURN(ExperimentResult out,
                                  RunExperiment(run, objective));
        const RoundMetrics& last = out.table.back();
        cell.final_accuracy.push_back(last.test_accuracy);
        cell.final_loss.push_back(last.train_loss);
        finite = finite && std::isfinite(last.train_loss) &&
                 std::isfinite(last.test_accuracy) &&
                 out.final_state.theta.allFinite();
        has_accuracy = objective.TestAccuracy(out.final_state.theta).has_value();
      }
      if (!finite) {
        cell.score = -std::numeric_limits<double>::infinity();
      } else if (has_accuracy) {
        cell.score = Mean(cell.final_accuracy);
      } else {
        cell.score = -Mean(cell.final_loss);
      }
      result.cells.push_back(std::move(cell));
      const int index = static_cast<int>(result.cells.size()) - 1;
      if (result.best < 0 ||
          result.cells[index].score > result.cells[result.best].score) {
        result.best = index;
      }
    }
  }
  result.best_config = plan.config;
  result.best_config.eta = result.cells[result.best].eta;
  result.best_config.clip_norm = result.cells[result.best].clip_norm;
  return result;
}

absl::StatusOr<GridResult> GridSearch(const ExperimentPlan& base,
                                      const GridSpec& grid, int seeds) {
  FEDSOFIM_ASSIGN_OR_RETURN(
      std::unique_ptr<FederatedObjective> objective,
      BuildObjective(base.task, base.config.num_clients));
  return GridSearch(base, *objective, grid, seeds);
}

std::string FormatGridCsv(const GridResult& result) {
  std::string out = "eta,clip_cg,mean_accuracy,mean_loss,score,selected\n";
  char line[256];
  for (size_t i = 0; i < result.cells.size(); ++i) {
    const GridCell& cell = result.cells[i];
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  cell.eta, cell.clip_norm, Mean(cell.final_accuracy),
                  Mean(cell.final_loss), cell.score,
                  static_cast<int>(i) == result.best ? 1 : 0);
    out += line;
  }
  return out;
}

}  // namespace fedsofim
