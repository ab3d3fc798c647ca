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

#include "gtx/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace gtx {

TrialSetup prepare_trial(const ExperimentConfig& config, std::size_t trial_index) {
  SimConfig sim;
  sim.seed = split_seed(config.seed, trial_index);
  sim.n_examples = config.n_examples;
  sim.n_labelers = config.n_labelers;
  sim.accuracy_lo = config.accuracy_lo;
  sim.accuracy_hi = config.accuracy_hi;
  Simulation simulation = init_simulation(sim);
  // Assessment draws happen in oracle mode too, so collection sees the same
  // stream either way.
  const AssessmentSet assessment =
      make_assessment_set(config.assessment_size, simulation.rng);
  EstimateTable assessed =
      run_assessment(simulation.labelers, assessment, simulation.rng);
  EstimateTable estimates = config.oracle_accuracy
                                ? oracle_estimates(simulation.labelers)
                                : std::move(assessed);
  GroundTruth truth(simulation.dataset);
  return TrialSetup{std::move(simulation), std::move(estimates), std::move(truth)};
}

std::vector<SweepCell> sweep_cells(const ExperimentConfig& config) {
  std::vector<SweepCell> cells;
  for (Method m : config.methods) {
    if (m == Method::kMV || m == Method::kWMV) {
      for (auto c : config.count_grid) {
        SweepCell cell;
        cell.method = m;
        cell.param = CellParam::kCount;
        cell.count = c;
        cells.push_back(cell);
      }
    } else {
      for (double tau : config.tau_grid) {
        SweepCell cell;
        cell.method = m;
        cell.param = CellParam::kTau;
        cell.tau = tau;
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

std::string cell_key(const ExperimentConfig& config, const SweepCell& cell) {
  std::string key = std::string(strategy_name(config.strategy)) + "|" +
                    std::string(method_name(cell.method));
  if (config.strategy == Strategy::kThreshold) {
    key += cell.param == CellParam::kTau ? "|tau=" + format_number(cell.tau)
                                         : "|count=" + std::to_string(cell.count);
    key += "|kappa=" + std::to_string(config.kappa);
  }
  key += "|B=" + std::to_string(config.budget) +
         "|N=" + std::to_string(config.n_examples) +
         "|L=" + std::to_string(config.n_labelers) + "|acc=[" +
         format_number(config.accuracy_lo) + "," + format_number(config.accuracy_hi) +
         "]|assess=" + std::to_string(config.assessment_size) +
         "|oracle=" + (config.oracle_accuracy ? "1" : "0");
  return key;
}

CollectionOutcome run_cell(const ExperimentConfig& config, const SweepCell& cell,
                           const TrialSetup& setup) {
  Rng rng = setup.simulation.rng;
  const auto& sim = setup.simulation;
  if (config.strategy == Strategy::kUncertainty) {
    return run_uncertainty_sampling(sim.dataset, sim.labelers, setup.estimates,
                                    config.budget, cell.method, rng);
  }
  ThresholdConfig tc;
  tc.kappa = config.kappa;
  if (cell.param == CellParam::kTau) {
    tc.tau = cell.tau;
  } else {
    tc.fixed_count = cell.count;
  }
  return run_confidence_threshold(sim.dataset, sim.labelers, setup.estimates, tc,
                                  config.budget, cell.method, rng);
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  const unsigned threads =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (!failed.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

class ProgressCounter {
 public:
  ProgressCounter(std::string label, std::size_t total, const ProgressFn& fn)
      : label_(std::move(label)), total_(total), fn_(fn) {}

  void tick() {
    if (!fn_) return;
    std::lock_guard<std::mutex> lock(mu_);
    ++done_;
    const std::size_t step = std::max<std::size_t>(1, total_ / 10);
    if (done_ % step == 0 || done_ == total_) {
      fn_(label_ + ": " + std::to_string(done_) + "/" + std::to_string(total_) +
          " trials");
    }
  }

 private:
  std::string label_;
  std::size_t total_;
  const ProgressFn& fn_;
  std::mutex mu_;
  std::size_t done_ = 0;
};

bool better_cell(const SweepCell& a, const SweepCell& b) {
  const double ea = a.summary.error_rate ? a.summary.error_rate->mean : 2.0;
  const double eb = b.summary.error_rate ? b.summary.error_rate->mean : 2.0;
  if (ea != eb) return ea < eb;
  const double ka = a.summary.avg_k ? a.summary.avg_k->mean : 1e300;
  const double kb = b.summary.avg_k ? b.summary.avg_k->mean : 1e300;
  return ka < kb;
}

}  // namespace

SweepResult run_threshold_sweep(const ExperimentConfig& config, unsigned workers,
                                const ProgressFn& progress) {
  validate(config);
  SweepResult result;
  result.cells = sweep_cells(config);
  const std::size_t n_cells = result.cells.size();
  std::vector<std::vector<TrialReport>> reports(
      n_cells, std::vector<TrialReport>(config.trials));
  std::vector<std::string> keys;
  for (const auto& c : result.cells) keys.push_back(cell_key(config, c));

  ProgressCounter counter("threshold sweep", config.trials, progress);
  parallel_for(config.trials, workers, [&](std::size_t t) {
    const TrialSetup setup = prepare_trial(config, t);
    for (std::size_t c = 0; c < n_cells; ++c) {
      const auto outcome = run_cell(config, result.cells[c], setup);
      reports[c][t] = make_report(outcome, setup.truth, keys[c]);
    }
    counter.tick();
  });

  for (std::size_t c = 0; c < n_cells; ++c) {
    result.cells[c].summary = summarize(reports[c]);
  }
  for (Method m : config.methods) {
    std::size_t best = n_cells;
    for (std::size_t c = 0; c < n_cells; ++c) {
      if (result.cells[c].method != m) continue;
      if (best == n_cells || better_cell(result.cells[c], result.cells[best])) best = c;
    }
    if (best < n_cells) {
      result.cells[best].best = true;
      result.best.push_back(best);
    }
  }
  return result;
}

TrialDynamics replay_dynamics(const CollectionOutcome& outcome,
                              const SimDataset& dataset) {
  TrialDynamics d;
  const std::size_t n = dataset.size();
  std::vector<int> label(n, -1);
  std::vector<double> soft(n, 0.0);
  std::size_t covered = 0;
  std::int64_t wrong = 0;
  double abs_error = 0.0;
  for (const auto& e : outcome.event_log) {
    const auto i = static_cast<std::size_t>(to_underlying(e.example_id));
    const int truth = dataset.examples[i].true_label.value();
    if (label[i] < 0) {
      ++covered;
    } else {
      wrong -= label[i] != truth;
      abs_error -= std::abs(truth - soft[i]);
    }
    label[i] = e.aggregate_label.value();
    soft[i] = e.soft_p1;
    wrong += label[i] != truth;
    abs_error += std::abs(truth - soft[i]);
    if (covered < n) continue;
    if (d.error_rate.empty()) d.first_step = e.step;
    d.error_rate.push_back(static_cast<double>(wrong) / static_cast<double>(n));
    d.mae.push_back(abs_error / static_cast<double>(n));
  }
  return d;
}

UncertaintyResult run_uncertainty_experiment(const ExperimentConfig& config,
                                             unsigned workers,
                                             const ProgressFn& progress) {
  validate(config);
  std::vector<SweepCell> cells;
  for (Method m : config.methods) {
    SweepCell c;
    c.method = m;
    cells.push_back(c);
  }
  const std::size_t n_methods = cells.size();
  std::vector<std::vector<TrialReport>> reports(
      n_methods, std::vector<TrialReport>(config.trials));
  std::vector<std::vector<TrialDynamics>> dyn(
      n_methods, std::vector<TrialDynamics>(config.trials));

  ProgressCounter counter("uncertainty sampling", config.trials, progress);
  parallel_for(config.trials, workers, [&](std::size_t t) {
    const TrialSetup setup = prepare_trial(config, t);
    for (std::size_t m = 0; m < n_methods; ++m) {
      const auto outcome = run_cell(config, cells[m], setup);
      reports[m][t] = make_report(outcome, setup.truth, cell_key(config, cells[m]));
      dyn[m][t] = replay_dynamics(outcome, setup.simulation.dataset);
    }
    counter.tick();
  });

  UncertaintyResult result;
  for (std::size_t m = 0; m < n_methods; ++m) {
    SummaryRow row;
    row.method = cells[m].method;
    row.summary = summarize(reports[m]);
    result.summary.push_back(row);

    DynamicsSeries series;
    series.method = cells[m].method;
    std::size_t length = 0;
    bool have = false;
    for (const auto& d : dyn[m]) {
      if (d.error_rate.empty()) continue;
      if (!have) series.first_step = d.first_step;
      have = true;
      length = std::max(length, d.error_rate.size());
    }
    // Trials that stop early hold their final value.
    for (std::size_t i = 0; i < length; ++i) {
      std::vector<double> err, mae;
      for (const auto& d : dyn[m]) {
        if (d.error_rate.empty()) continue;
        const std::size_t j = std::min(i, d.error_rate.size() - 1);
        err.push_back(d.error_rate[j]);
        mae.push_back(d.mae[j]);
      }
      series.error_rate.push_back(*summarize_values(err));
      series.mae.push_back(*summarize_values(mae));
    }
    result.dynamics.push_back(std::move(series));
  }
  return result;
}

namespace {

SummaryRow summary_row(const SweepCell& cell) {
  SummaryRow row;
  row.method = cell.method;
  row.summary = cell.summary;
  if (cell.param == CellParam::kTau) {
    row.best_tau = cell.tau;
  } else {
    row.best_count = cell.count;
  }
  return row;
}

void require_strategy(const ExperimentConfig& config, Strategy expected,
                      std::string_view command) {
  if (config.strategy != expected) {
    throw Error(ErrorCode::kConfigError,
                std::string(command) + " requires strategy '" +
                    std::string(strategy_name(expected)) + "', config has '" +
                    std::string(strategy_name(config.strategy)) + "'");
  }
}

}  // namespace

ResultSet cmd_threshold_experiment(const ExperimentConfig& config,
                                   const std::filesystem::path& out_dir,
                                   unsigned workers, const ProgressFn& progress) {
  require_strategy(config, Strategy::kThreshold, "threshold");
  SweepResult sweep = run_threshold_sweep(config, workers, progress);
  ResultSet results;
  const TrialSetup first = prepare_trial(config, 0);
  for (std::size_t b : sweep.best) {
    const SweepCell& cell = sweep.cells[b];
    results.summary.push_back(summary_row(cell));
    results.samples.push_back({cell.method, run_cell(config, cell, first), first.truth});
  }
  results.sweep = std::move(sweep.cells);
  write_results(results, out_dir);
  return results;
}

ResultSet cmd_uncertainty_experiment(const ExperimentConfig& config,
                                     const std::filesystem::path& out_dir,
                                     unsigned workers, const ProgressFn& progress) {
  require_strategy(config, Strategy::kUncertainty, "uncertainty");
  UncertaintyResult run = run_uncertainty_experiment(config, workers, progress);
  ResultSet results;
  results.summary = std::move(run.summary);
  results.dynamics = std::move(run.dynamics);
  const TrialSetup first = prepare_trial(config, 0);
  for (Method m : config.methods) {
    SweepCell cell;
    cell.method = m;
    results.samples.push_back({m, run_cell(config, cell, first), first.truth});
  }
  write_results(results, out_dir);
  return results;
}

ResultSet cmd_pareto(const ExperimentConfig& config,
                     const std::filesystem::path& out_dir, unsigned workers,
                     const ProgressFn& progress) {
  require_strategy(config, Strategy::kThreshold, "pareto");
  SweepResult sweep = run_threshold_sweep(config, workers, progress);
  ResultSet results;
  for (std::size_t b : sweep.best) results.summary.push_back(summary_row(sweep.cells[b]));
  results.sweep = std::move(sweep.cells);
  write_results(results, out_dir);
  return results;
}

}  // namespace gtx
