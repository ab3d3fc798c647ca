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

// Experiment drivers: threshold sweeps, uncertainty-sampling dynamics and
// the labels-per-example vs. error trade-off.
//
// Trial t of a run uses seed split_seed(config.seed, t). From that seed a
// trial draws its dataset, labelers, assessment set and assessment
// responses (in that order); every cell of the sweep then starts collection
// from a copy of the same Rng state, so methods and thresholds are compared
// on identical data. Results are stored by trial index, which makes the
// worker count irrelevant to the output.

#ifndef GTX_EXPERIMENTS_HPP_
#define GTX_EXPERIMENTS_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gtx/config.hpp"
#include "gtx/io.hpp"

namespace gtx {

struct TrialSetup {
  Simulation simulation;
  EstimateTable estimates;
  GroundTruth truth;
};

TrialSetup prepare_trial(const ExperimentConfig& config, std::size_t trial_index);

// Cells as swept by the threshold experiment: tau_grid for SV and GTX,
// count_grid for MV and WMV, in config method order.
std::vector<SweepCell> sweep_cells(const ExperimentConfig& config);

std::string cell_key(const ExperimentConfig& config, const SweepCell& cell);

CollectionOutcome run_cell(const ExperimentConfig& config, const SweepCell& cell,
                           const TrialSetup& setup);

// Runs fn(0..n-1) on up to `workers` threads. The first exception thrown is
// rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

using ProgressFn = std::function<void(const std::string&)>;

struct SweepResult {
  std::vector<SweepCell> cells;
  // Index into `cells` of each method's best cell, in config method order.
  std::vector<std::size_t> best;
};

// Best cell: lowest mean error rate; ties go to the lower mean avg_k.
SweepResult run_threshold_sweep(const ExperimentConfig& config, unsigned workers,
                                const ProgressFn& progress = {});

struct UncertaintyResult {
  std::vector<SummaryRow> summary;
  std::vector<DynamicsSeries> dynamics;
};

UncertaintyResult run_uncertainty_experiment(const ExperimentConfig& config,
                                             unsigned workers,
                                             const ProgressFn& progress = {});

// Dataset-wide error and MAE after each label from the step at which every
// example has a label through the end of the log. Empty when some example
// never got a label.
struct TrialDynamics {
  std::uint64_t first_step = 0;
  std::vector<double> error_rate;
  std::vector<double> mae;
};

TrialDynamics replay_dynamics(const CollectionOutcome& outcome,
                              const SimDataset& dataset);

// Full commands: run, then write files into out_dir.
ResultSet cmd_threshold_experiment(const ExperimentConfig& config,
                                   const std::filesystem::path& out_dir,
                                   unsigned workers, const ProgressFn& progress = {});
ResultSet cmd_uncertainty_experiment(const ExperimentConfig& config,
                                     const std::filesystem::path& out_dir,
                                     unsigned workers,
                                     const ProgressFn& progress = {});
ResultSet cmd_pareto(const ExperimentConfig& config,
                     const std::filesystem::path& out_dir, unsigned workers,
                     const ProgressFn& progress = {});

}  // namespace gtx

#endif  // GTX_EXPERIMENTS_HPP_
