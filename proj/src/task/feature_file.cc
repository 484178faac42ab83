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
#include "fedsofim/task/feature_file.h"

#include <cstdio>
#include <fstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "fedsofim/core/config.h"

namespace fedsofim {
namespace {

absl::Status LineError(int line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", what));
}

absl::Status ParseHeader(absl::string_view header, FeatureFileMetadata& meta) {
  bool have_dim = false;
  bool have_classes = false;
  for (absl::string_view field : absl::StrSplit(header, ',')) {
    field = absl::StripAsciiWhitespace(field);
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(field, absl::MaxSplits('=', 1));
    int value = 0;
    if (!absl::SimpleAtoi(kv.second, &value)) {
      return LineError(1, absl::StrCat("malformed header field '", field, "'"));
    }
    if (kv.first == "dim") {
      meta.feature_dim = value;
      have_dim = true;
    } else if (kv.first == "classes") {
      meta.num_classes = value;
      have_classes = true;
    } else {
      return LineError(1, absl::StrCat("unknown header field '", kv.first, "'"));
    }
  }
  if (!have_dim || !have_classes) {
    return LineError(1, "header must be 'dim=<int>,classes=<int>'");
  }
  if (meta.feature_dim < 1) return LineError(1, "dim must be at least 1");
  if (meta.num_classes < 2) return LineError(1, "classes must be at least 2");
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<FeatureFile> ParseFrozenFeatures(absl::string_view text) {
  FeatureFile file;
  FeatureFileMetadata& meta = file.metadata;
  int line_number = 0;
  bool have_header = false;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (!have_header) {
      if (line_number != 1) return LineError(line_number, "header not first");
      absl::Status status = ParseHeader(line, meta);
      if (!status.ok()) return status;
      meta.class_counts.assign(meta.num_classes, 0);
      have_header = true;
      continue;
    }
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (static_cast<int>(fields.size()) != meta.feature_dim + 1) {
      return LineError(line_number,
                       absl::StrCat("expected ", meta.feature_dim,
                                    " features, found ", fields.size() - 1));
    }
    Example example;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(fields[0]),
                          &example.label)) {
      return LineError(line_number,
                       absl::StrCat("malformed label '", fields[0], "'"));
    }
    if (example.label < 0 || example.label >= meta.num_classes) {
      return LineError(line_number, absl::StrCat("label ", example.label,
                                                 " out of range [0, ",
                                                 meta.num_classes, ")"));
    }
    example.features.resize(meta.feature_dim);
    for (int j = 0; j < meta.feature_dim; ++j) {
      if (!absl::SimpleAtod(absl::StripAsciiWhitespace(fields[j + 1]),
                            &example.features[j])) {
        return LineError(line_number, absl::StrCat("malformed feature '",
                                                   fields[j + 1], "'"));
      }
    }
    ++meta.class_counts[example.label];
    file.examples.push_back(std::move(example));
  }
  if (!have_header) return LineError(1, "missing header");
  meta.num_examples = static_cast<int>(file.examples.size());
  return file;
}

absl::StatusOr<FeatureFile> LoadFrozenFeatures(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<FeatureFile> file = ParseFrozenFeatures(*text);
  if (!file.ok()) {
    return absl::Status(file.status().code(),
                        absl::StrCat(path, ": ", file.status().message()));
  }
  return file;
}

std::string FormatFrozenFeatures(std::span<const Example> examples,
                                 int feature_dim, int num_classes) {
  std::string out = absl::StrCat("dim=", feature_dim, ",classes=", num_classes,
                                 "\n");
  char buffer[32];
  for (const Example& example : examples) {
    absl::StrAppend(&out, example.label);
    for (double v : example.features) {
      std::snprintf(buffer, sizeof(buffer), ",%.17g", v);
      out.append(buffer);
    }
    out.push_back('\n');
  }
  return out;
}

absl::Status WriteFrozenFeatures(const std::string& path,
                                 std::span<const Example> examples,
                                 int feature_dim, int num_classes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << FormatFrozenFeatures(examples, feature_dim, num_classes);
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace fedsofim
