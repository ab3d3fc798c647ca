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

// Evaluation metrics over labeled examples and their summaries over trials.
//
// Error rate is the fraction of labeled examples whose aggregate label is
// wrong. MAE is the mean |y - soft_p1|, which charges confident mistakes
// more than hesitant ones. Both are undefined (nullopt) when nothing was
// labeled.

#ifndef GTX_METRICS_HPP_
#define GTX_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtx/aggregators.hpp"
#include "gtx/simulation.hpp"
#include "gtx/strategies.hpp"

namespace gtx {

// Example id -> true label. Dense ids 0..n-1 (what the simulator produces)
// are looked up directly; anything else by binary search.
class GroundTruth {
 public:
  GroundTruth() = default;
  explicit GroundTruth(const SimDataset& dataset);
  explicit GroundTruth(std::vector<std::pair<ExampleId, LabelValue>> labels);

  // Throws kInvalidValue for unknown ids.
  LabelValue at(ExampleId id) const;

 private:
  bool dense_ = true;
  std::vector<std::pair<ExampleId, LabelValue>> labels_;
};

std::optional<double> error_rate(std::span<const AggregateLabel> aggregates,
                                 const GroundTruth& truth);
std::optional<double> mean_absolute_error(std::span<const AggregateLabel> aggregates,
                                          const GroundTruth& truth);

struct TrialReport {
  Method method = Method::kGTX;
  Strategy strategy = Strategy::kThreshold;
  // Identifies the configuration cell; trials are only summarized together
  // when this matches.
  std::string config;
  std::size_t n_labeled = 0;
  std::uint64_t labels_spent = 0;
  std::optional<double> avg_k;
  std::optional<double> error_rate;
  std::optional<double> mae;
};

TrialReport make_report(const CollectionOutcome& outcome, const GroundTruth& truth,
                        std::string config);

struct MetricSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;  // trials where the metric was defined
};

// Mean and standard error (sample stddev / sqrt(n)) of the defined values;
// nullopt when none are defined.
std::optional<MetricSummary> summarize_values(std::span<const double> values);

struct TrialSummary {
  Method method = Method::kGTX;
  Strategy strategy = Strategy::kThreshold;
  std::string config;
  std::size_t trials = 0;
  MetricSummary n_labeled;
  std::optional<MetricSummary> avg_k;
  std::optional<MetricSummary> error_rate;
  std::optional<MetricSummary> mae;
};

// Requires at least one trial; throws kConfigError when the reports mix
// methods, strategies or configs.
TrialSummary summarize(std::span<const TrialReport> trials);

struct CalibrationBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double mean_confidence = 0.0;
  double accuracy = 0.0;
};

// Equal-width confidence bins over [0, 1]; confidence 1 lands in the top bin.
std::vector<CalibrationBin> calibration_bins(std::span<const AggregateLabel> aggregates,
                                             const GroundTruth& truth,
                                             std::size_t n_bins = 10);

}  // namespace gtx

#endif  // GTX_METRICS_HPP_
