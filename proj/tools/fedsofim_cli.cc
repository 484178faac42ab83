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
// Command-line entry point: run, calibrate, grid, verify and gen-task.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "fedsofim/accountant/accountant.h"
#include "fedsofim/core/config.h"
#include "fedsofim/core/status_macros.h"
#include "fedsofim/harness/experiment.h"
#include "fedsofim/harness/grid.h"
#include "fedsofim/harness/metrics_io.h"
#include "fedsofim/harness/verify.h"
#include "fedsofim/task/feature_file.h"
#include "fedsofim/task/synthetic_features.h"

namespace fedsofim {
namespace {

std::string Real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// Applies `--key value` and `--key=value` overrides left over by CLI11.
// Dashes in keys are read as underscores.
absl::Status ApplyOverrides(ExperimentPlan& plan,
                            const std::vector<std::string>& args) {
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) != 0 || arg.size() == 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("unexpected argument '", arg, "'"));
    }
    std::string key = arg.substr(2);
    std::string value;
    if (const size_t eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else if (i + 1 < args.size()) {
      value = args[++i];
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("missing value for ", arg));
    }
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    FEDSOFIM_RETURN_IF_ERROR(ApplyPlanValue(plan, key, value));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentPlan> PlanFromArgs(
    const std::string& config_path, const std::vector<std::string>& extras) {
  ExperimentPlan plan;
  if (!config_path.empty()) {
    FEDSOFIM_ASSIGN_OR_RETURN(plan, LoadPlan(config_path));
  }
  FEDSOFIM_RETURN_IF_ERROR(ApplyOverrides(plan, extras));
  return plan;
}

absl::Status WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return absl::OkStatus();
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> ParseList(const std::string& text) {
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    double v = 0.0;
    if (!absl::SimpleAtod(part, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad number '", part, "' in list"));
    }
    out.push_back(v);
  }
  return out;
}

absl::Status Run(const std::string& config_path,
                 const std::vector<std::string>& extras) {
  FEDSOFIM_ASSIGN_OR_RETURN(ExperimentPlan plan,
                            PlanFromArgs(config_path, extras));
  const bool to_stdout = plan.output_path.empty();
  FEDSOFIM_ASSIGN_OR_RETURN(ExperimentResult result, RunExperiment(plan));
  if (to_stdout) {
    std::cout << FormatMetricsCsv(result.table, result.preamble);
  } else {
    std::cerr << "sigma_g=" << Real(result.config.noise_multiplier) << "\n"
              << "wrote " << result.table.size() << " rows to "
              << plan.output_path << "\n";
  }
  return absl::OkStatus();
}

absl::Status Calibrate(double epsilon, double delta, int n, int rounds) {
  FEDSOFIM_RETURN_IF_ERROR(
      (PrivacySpec{epsilon, delta, rounds, n, 1}).Validate());
  FEDSOFIM_ASSIGN_OR_RETURN(double sigma,
                            CalibrateSigma(epsilon, delta, n, rounds));
  FEDSOFIM_ASSIGN_OR_RETURN(double achieved,
                            ComposedDelta(epsilon, sigma, n, rounds));
  std::cout << "sigma_g=" << Real(sigma) << "\n"
            << "delta=" << Real(achieved) << "\n";
  return absl::OkStatus();
}

absl::Status Grid(const std::string& config_path,
                  const std::vector<std::string>& extras,
                  const std::string& etas, const std::string& clips,
                  int seeds, const std::string& output) {
  FEDSOFIM_ASSIGN_OR_RETURN(ExperimentPlan plan,
                            PlanFromArgs(config_path, extras));
  GridSpec grid = GridSpec::Default();
  if (!etas.empty()) {
    FEDSOFIM_ASSIGN_OR_RETURN(grid.etas, ParseList(etas));
  }
  if (!clips.empty()) {
    FEDSOFIM_ASSIGN_OR_RETURN(grid.clip_norms, ParseList(clips));
  }
  FEDSOFIM_ASSIGN_OR_RETURN(GridResult result, GridSearch(plan, grid, seeds));
  FEDSOFIM_RETURN_IF_ERROR(WriteText(output, FormatGridCsv(result)));
  std::cerr << "best";
  for (const auto& [key, value] : ConfigToKeyValues(result.best_config)) {
    std::cerr << " " << key << "=" << value;
  }
  std::cerr << "\n";
  return absl::OkStatus();
}

absl::StatusOr<bool> Verify(const std::string& suite_name, uint64_t seed) {
  std::vector<VerifySuite> suites;
  if (suite_name == "all" || suite_name == "ALL") {
    suites = AllVerifySuites();
  } else {
    FEDSOFIM_ASSIGN_OR_RETURN(VerifySuite suite, ParseVerifySuite(suite_name));
    suites.push_back(suite);
  }
  bool passed = true;
  for (VerifySuite suite : suites) {
    const VerifyReport report = VerifyTheory(suite, seed);
    std::cout << FormatVerifyReport(report);
    passed = passed && report.passed();
  }
  return passed;
}

struct GenTaskArgs {
  std::string kind = "softmax";
  std::string output;
  std::string test_output;
  int test_examples = 0;
  SyntheticFeatureSpec features;
  QuadraticSpec quadratic;
};

absl::Status GenTask(const GenTaskArgs& args) {
  if (args.kind == "quadratic") {
    // Validate by building it once.
    FEDSOFIM_RETURN_IF_ERROR(MakeSyntheticQuadratic(args.quadratic).status());
    const QuadraticSpec& q = args.quadratic;
    const std::string text = absl::StrCat(
        "task = quadratic\n", "clients = ", q.num_clients, "\n",
        "dim = ", q.dim, "\n", "mu = ", Real(q.mu), "\n",
        "smoothness = ", Real(q.smoothness), "\n",
        "heterogeneity = ", Real(q.heterogeneity), "\n",
        "samples_per_client = ", q.samples_per_client, "\n",
        "task_seed = ", q.seed, "\n");
    return WriteText(args.output, text);
  }
  if (args.kind != "softmax") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown task kind '", args.kind, "'"));
  }
  FEDSOFIM_ASSIGN_OR_RETURN(std::vector<Example> examples,
                            MakeSyntheticFeatures(args.features));
  const int f = args.features.feature_dim;
  const int k = args.features.num_classes;
  if (args.test_examples < 0 ||
      args.test_examples >= static_cast<int>(examples.size())) {
    return absl::InvalidArgumentError(
        "test_examples must lie in [0, examples)");
  }
  std::span<const Example> all(examples);
  if (args.test_examples > 0) {
    if (args.test_output.empty()) {
      return absl::InvalidArgumentError(
          "--test-examples needs --test-output");
    }
    FEDSOFIM_RETURN_IF_ERROR(WriteFrozenFeatures(
        args.test_output, all.first(args.test_examples), f, k));
  }
  return WriteText(args.output, FormatFrozenFeatures(
                                    all.subspan(args.test_examples), f, k));
}

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return 2;
}

}  // namespace
}  // namespace fedsofim

int main(int argc, char** argv) {
  using namespace fedsofim;
  CLI::App app{"Differentially private federated optimization simulator"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand(
      "run", "Run one experiment; extra --key value pairs override the plan");
  run->add_option("--config", config_path, "Plan file of key = value lines");
  run->allow_extras();

  double epsilon = 1.0, delta = 1e-5;
  int n = 20, rounds = 70;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Smallest sigma_g for an (eps, delta)");
  calibrate->add_option("--epsilon", epsilon)->required();
  calibrate->add_option("--delta", delta)->required();
  calibrate->add_option("--n", n, "Number of clients")->required();
  calibrate->add_option("--rounds", rounds)->required();

  std::string etas, clips, grid_output;
  int seeds = 1;
  CLI::App* grid = app.add_subcommand(
      "grid", "Grid search over eta and clip_cg; prints one row per cell");
  grid->add_option("--config", config_path, "Plan file of key = value lines");
  grid->add_option("--etas", etas, "Comma-separated step sizes");
  grid->add_option("--clips", clips, "Comma-separated clipping radii");
  grid->add_option("--seeds", seeds, "Noise seeds per cell");
  grid->add_option("--grid-output", grid_output, "Sweep table path");
  grid->allow_extras();

  std::string suite;
  uint64_t verify_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run a theory suite");
  verify->add_option("--suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--seed", verify_seed);

  GenTaskArgs gen;
  CLI::App* gen_task =
      app.add_subcommand("gen-task", "Write a synthetic task to disk");
  gen_task->add_option("--kind", gen.kind, "softmax or quadratic");
  gen_task->add_option("--output", gen.output, "Output path ('-' = stdout)");
  gen_task->add_option("--test-output", gen.test_output,
                       "Held-out feature file (softmax)");
  gen_task->add_option("--test-examples", gen.test_examples);
  gen_task->add_option("--examples", gen.features.num_examples);
  gen_task->add_option("--feature-dim", gen.features.feature_dim);
  gen_task->add_option("--classes", gen.features.num_classes);
  gen_task->add_option("--condition-number", gen.features.condition_number);
  gen_task->add_option("--class-separation", gen.features.class_separation);
  gen_task->add_option("--feature-offset", gen.features.feature_offset);
  gen_task->add_option("--feature-scale", gen.features.feature_scale);
  gen_task->add_option("--clients", gen.quadratic.num_clients);
  gen_task->add_option("--dim", gen.quadratic.dim);
  gen_task->add_option("--mu", gen.quadratic.mu);
  gen_task->add_option("--smoothness", gen.quadratic.smoothness);
  gen_task->add_option("--heterogeneity", gen.quadratic.heterogeneity);
  gen_task->add_option("--samples-per-client",
                       gen.quadratic.samples_per_client);
  uint64_t gen_seed = 0;
  gen_task->add_option("--seed", gen_seed);

  CLI11_PARSE(app, argc, argv);

  absl::Status status;
  if (run->parsed()) {
    status = Run(config_path, run->remaining());
  } else if (calibrate->parsed()) {
    status = Calibrate(epsilon, delta, n, rounds);
  } else if (grid->parsed()) {
    status = Grid(config_path, grid->remaining(), etas, clips, seeds,
                  grid_output);
  } else if (verify->parsed()) {
    absl::StatusOr<bool> passed = Verify(suite, verify_seed);
    if (!passed.ok()) return Fail(passed.status());
    return *passed ? 0 : 1;
  } else if (gen_task->parsed()) {
    gen.features.seed = gen_seed;
    gen.quadratic.seed = gen_seed;
    status = GenTask(gen);
  }
  return status.ok() ? 0 : Fail(status);
}
