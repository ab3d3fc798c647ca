// Copyright 2026 The GTX Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gtx: label-aggregation experiments from the command line.
//
//   gtx threshold   [--config c.json] [--out dir] [--seed s] [--trials n]
//                   [--workers w] [--oracle-accuracy]
//   gtx uncertainty ...same flags...
//   gtx pareto      ...same flags...
//   gtx assess --labels responses.jsonl --truth truth.jsonl [--out dir]
//
// Exit codes: 0 success, 1 config/usage error, 2 runtime error. Progress
// goes to stderr; results only to files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gtx/assessment.hpp"
#include "gtx/config.hpp"
#include "gtx/experiments.hpp"
#include "gtx/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct RunFlags {
  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  unsigned workers = 1;
  bool oracle = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON experiment config");
  cmd->add_option("--out", flags.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "master seed (overrides config)");
  cmd->add_option("--trials", flags.trials, "trials per cell (overrides config)");
  cmd->add_option("--workers", flags.workers, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--oracle-accuracy", flags.oracle,
                "use true labeler accuracies instead of assessment estimates");
}

gtx::ExperimentConfig resolve_config(const RunFlags& flags, gtx::Strategy strategy) {
  gtx::ExperimentConfig config =
      flags.config_path.empty() ? gtx::default_config(strategy)
                                : gtx::load_config(flags.config_path, strategy);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.trials) config.trials = *flags.trials;
  if (flags.oracle) config.oracle_accuracy = true;
  gtx::validate(config);
  return config;
}

void run_assess(const std::string& labels_path, const std::string& truth_path,
                const std::filesystem::path& out_dir) {
  const auto records = gtx::read_label_records(labels_path);
  const gtx::AssessmentSet assessment(gtx::read_truth(truth_path));
  std::map<gtx::LabelerId, gtx::LabelerResponses> responses;
  for (const auto& r : records) {
    auto& per = responses[r.record.labeler_id];
    if (!per.emplace(r.record.example_id, r.record.value).second) {
      throw gtx::Error(gtx::ErrorCode::kDuplicateLabeler,
                       "labeler " + std::to_string(gtx::to_underlying(r.record.labeler_id)) +
                           " answered example " +
                           std::to_string(gtx::to_underlying(r.record.example_id)) +
                           " twice");
    }
  }
  std::string csv = "labeler_id,n_items,raw_accuracy,accuracy\n";
  for (const auto& [id, resp] : responses) {
    const double raw = gtx::raw_accuracy(resp, assessment);
    const gtx::LabelerEstimate est(id, raw);
    csv += std::to_string(gtx::to_underlying(id)) + "," +
           std::to_string(assessment.size()) + "," + gtx::format_number(raw) + "," +
           gtx::format_number(est.accuracy()) + "\n";
  }
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / "estimates.csv";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw gtx::Error(gtx::ErrorCode::kIoError, "cannot write " + path.string());
  out << csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label aggregation with known labeler accuracies"};
  app.require_subcommand(1);

  RunFlags threshold_flags, uncertainty_flags, pareto_flags;
  auto* threshold = app.add_subcommand("threshold", "confidence-threshold sweep");
  add_run_flags(threshold, threshold_flags);
  auto* uncertainty = app.add_subcommand("uncertainty", "uncertainty-sampling dynamics");
  add_run_flags(uncertainty, uncertainty_flags);
  auto* pareto = app.add_subcommand("pareto", "labels-per-example vs. error points");
  add_run_flags(pareto, pareto_flags);

  std::string labels_path, truth_path, assess_out = "results";
  auto* assess = app.add_subcommand("assess", "estimate labeler accuracies");
  assess->add_option("--labels", labels_path, "label-record JSONL")->required();
  assess->add_option("--truth", truth_path, "assessment truth JSONL")->required();
  assess->add_option("--out", assess_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const gtx::ProgressFn progress = [](const std::string& line) {
    std::cerr << line << "\n";
  };
  try {
    if (*threshold) {
      const auto config = resolve_config(threshold_flags, gtx::Strategy::kThreshold);
      gtx::cmd_threshold_experiment(config, threshold_flags.out_dir,
                                    threshold_flags.workers, progress);
    } else if (*uncertainty) {
      const auto config = resolve_config(uncertainty_flags, gtx::Strategy::kUncertainty);
      gtx::cmd_uncertainty_experiment(config, uncertainty_flags.out_dir,
                                      uncertainty_flags.workers, progress);
    } else if (*pareto) {
      const auto config = resolve_config(pareto_flags, gtx::Strategy::kThreshold);
      gtx::cmd_pareto(config, pareto_flags.out_dir, pareto_flags.workers, progress);
    } else if (*assess) {
      run_assess(labels_path, truth_path, assess_out);
    }
  } catch (const gtx::Error& e) {
    std::cerr << "error (" << gtx::error_code_name(e.code()) << "): " << e.what() << "\n";
    const bool config_error = e.code() == gtx::ErrorCode::kConfigError ||
                              e.code() == gtx::ErrorCode::kParseError;
    return config_error ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
