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
#ifndef FEDSOFIM_HARNESS_METRICS_IO_H_
#define FEDSOFIM_HARNESS_METRICS_IO_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "fedsofim/core/metrics.h"

namespace fedsofim {

// Column order of the metrics file.
inline constexpr absl::string_view kMetricsHeader =
    "round,train_loss,test_accuracy,aggregate_grad_norm,suboptimality_gap,"
    "elapsed";

// Optional `# key=value` lines written above the header.
using MetricsPreamble = std::vector<std::pair<std::string, std::string>>;

// Comma-separated table: preamble comments, one header row, one row per
// entry. Reals use 17 significant digits; an absent gap is an empty field.
std::string FormatMetricsCsv(const MetricsTable& table,
                             const MetricsPreamble& preamble = {});

// Inverse of FormatMetricsCsv. Comment lines are skipped.
absl::StatusOr<MetricsTable> ParseMetricsCsv(absl::string_view text);

absl::Status EmitMetrics(const MetricsTable& table, const std::string& path,
                         const MetricsPreamble& preamble = {});

}  // namespace fedsofim

#endif  // FEDSOFIM_HARNESS_METRICS_IO_H_
