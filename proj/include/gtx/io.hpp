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

// File formats.
//
// Label records (JSONL), one object per line:
//   {"example_id":3,"labeler_id":7,"value":1,"step":12}
// Steps must be strictly increasing. Extra keys are ignored on read, so an
// event log is also a valid label-record file.
//
// Event logs (JSONL) add the collection state after each label:
//   {"example_id":..,"labeler_id":..,"value":..,"step":..,"priority":..,
//    "label":..,"confidence":..,"soft_p1":..}
//
// Truth files (JSONL): {"example_id":3,"value":1}
//
// CSV tables use a header row, no quoting (no field ever contains a comma),
// and write numbers with std::to_chars shortest round-trip form, so golden
// files are stable byte for byte. Undefined values are empty fields.

#ifndef GTX_IO_HPP_
#define GTX_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gtx/aggregators.hpp"
#include "gtx/assessment.hpp"
#include "gtx/metrics.hpp"
#include "gtx/strategies.hpp"

namespace gtx {

struct StepRecord {
  LabelRecord record;
  std::uint64_t step = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

void write_label_records(const std::filesystem::path& path,
                         std::span<const StepRecord> records);
// Throws kParseError naming the line for malformed lines, missing keys or
// non-increasing steps.
std::vector<StepRecord> read_label_records(const std::filesystem::path& path);

void write_truth(const std::filesystem::path& path,
                 std::span<const AssessmentItem> items);
std::vector<AssessmentItem> read_truth(const std::filesystem::path& path);

void write_event_log(const std::filesystem::path& path,
                     const CollectionOutcome& outcome);

// example_id,true_label,label,confidence,soft_p1,n_labels
void write_aggregates_csv(const std::filesystem::path& path,
                          const CollectionOutcome& outcome,
                          const GroundTruth& truth);

// One row of a results table (Table-style layout). For count-driven cells
// best_count is set and best_tau is empty, and vice versa.
struct SummaryRow {
  Method method = Method::kGTX;
  std::optional<double> best_tau;
  std::optional<std::uint32_t> best_count;
  TrialSummary summary;
};

enum class CellParam { kTau, kCount };

struct SweepCell {
  Method method = Method::kGTX;
  CellParam param = CellParam::kTau;
  double tau = 0.0;
  std::uint32_t count = 0;
  TrialSummary summary;
  bool best = false;
};

// Labels collected vs. dataset-wide metrics, one point per collected label.
struct DynamicsSeries {
  Method method = Method::kGTX;
  std::uint64_t first_step = 0;
  std::vector<MetricSummary> error_rate;
  std::vector<MetricSummary> mae;
};

struct SampleOutcome {
  Method method = Method::kGTX;
  CollectionOutcome outcome;
  GroundTruth truth;
};

struct ResultSet {
  std::vector<SummaryRow> summary;
  std::optional<std::vector<SweepCell>> sweep;
  std::optional<std::vector<DynamicsSeries>> dynamics;
  std::vector<SampleOutcome> samples;
};

// method,avg_k,avg_k_se,best_tau,best_count,n_labeled,n_labeled_se,
// error_rate,error_rate_se,mae,mae_se,trials
void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SummaryRow> rows);
// method,param,value,trials,avg_k,avg_k_se,n_labeled,n_labeled_se,
// error_rate,error_rate_se,mae,mae_se,best
void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SweepCell> cells);
// method,param,value,avg_k,avg_k_se,error_rate,error_rate_se
void write_pareto_csv(const std::filesystem::path& path,
                      std::span<const SweepCell> cells);
// method,labels_collected,error_rate,error_rate_se,mae,mae_se
void write_dynamics_csv(const std::filesystem::path& path,
                        std::span<const DynamicsSeries> series);

// Writes summary.csv, sweep.csv + pareto.csv (when a sweep is present),
// dynamics.csv (when dynamics are present) and, per sample outcome,
// aggregates_<method>.csv and events_<method>.jsonl. Returns the paths
// written, in that order.
std::vector<std::filesystem::path> write_results(const ResultSet& results,
                                                 const std::filesystem::path& out_dir);

}  // namespace gtx

#endif  // GTX_IO_HPP_
