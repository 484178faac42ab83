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
#include "fedsofim/harness/metrics_io.h"

#include <cstdio>
#include <fstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace fedsofim {
namespace {

void AppendReal(std::string& out, double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  out.append(buffer);
}

absl::Status RowError(int line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", what));
}

}  // namespace

std::string FormatMetricsCsv(const MetricsTable& table,
                             const MetricsPreamble& preamble) {
  std::string out;
  for (const auto& [key, value] : preamble) {
    absl::StrAppend(&out, "# ", key, "=", value, "\n");
  }
  absl::StrAppend(&out, kMetricsHeader, "\n");
  for (const RoundMetrics& row : table) {
    absl::StrAppend(&out, row.round, ",");
    AppendReal(out, row.train_loss);
    out.push_back(',');
    AppendReal(out, row.test_accuracy);
    out.push_back(',');
    AppendReal(out, row.aggregate_grad_norm);
    out.push_back(',');
    if (row.suboptimality_gap) AppendReal(out, *row.suboptimality_gap);
    out.push_back(',');
    AppendReal(out, row.elapsed_seconds);
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<MetricsTable> ParseMetricsCsv(absl::string_view text) {
  MetricsTable table;
  bool have_header = false;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (line != kMetricsHeader) return RowError(line_number, "bad header");
      have_header = true;
      continue;
    }
    std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    if (f.size() != 6) return RowError(line_number, "expected 6 fields");
    RoundMetrics row;
    if (!absl::SimpleAtoi(f[0], &row.round) ||
        !absl::SimpleAtod(f[1], &row.train_loss) ||
        !absl::SimpleAtod(f[2], &row.test_accuracy) ||
        !absl::SimpleAtod(f[3], &row.aggregate_grad_norm) ||
        !absl::SimpleAtod(f[5], &row.elapsed_seconds)) {
      return RowError(line_number, "malformed field");
    }
    if (!f[4].empty()) {
      double gap = 0.0;
      if (!absl::SimpleAtod(f[4], &gap)) {
        return RowError(line_number, "malformed suboptimality_gap");
      }
      row.suboptimality_gap = gap;
    }
    table.push_back(row);
  }
  if (!have_header) return RowError(line_number, "missing header");
  return table;
}

absl::Status EmitMetrics(const MetricsTable& table, const std::string& path,
                         const MetricsPreamble& preamble) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << FormatMetricsCsv(table, preamble);
  out.flush();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace fedsofim
