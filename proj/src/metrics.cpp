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

#include "gtx/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace gtx {

GroundTruth::GroundTruth(const SimDataset& dataset) {
  labels_.reserve(dataset.size());
  for (const auto& e : dataset.examples) labels_.emplace_back(e.id, e.true_label);
  dense_ = true;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (to_underlying(labels_[i].first) != i) dense_ = false;
  }
  if (!dense_) std::sort(labels_.begin(), labels_.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
}

GroundTruth::GroundTruth(std::vector<std::pair<ExampleId, LabelValue>> labels)
    : dense_(false), labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < labels_.size(); ++i) {
    if (labels_[i].first == labels_[i - 1].first) {
      throw Error(ErrorCode::kInvalidValue,
                  "ground truth lists example " +
                      std::to_string(to_underlying(labels_[i].first)) + " twice");
    }
  }
}

LabelValue GroundTruth::at(ExampleId id) const {
  if (dense_) {
    const auto i = to_underlying(id);
    if (i < labels_.size()) return labels_[i].second;
  } else {
    auto it = std::lower_bound(
        labels_.begin(), labels_.end(), id,
        [](const auto& entry, ExampleId key) { return entry.first < key; });
    if (it != labels_.end() && it->first == id) return it->second;
  }
  throw Error(ErrorCode::kInvalidValue, "no true label for example " +
                                            std::to_string(to_underlying(id)));
}

std::optional<double> error_rate(std::span<const AggregateLabel> aggregates,
                                 const GroundTruth& truth) {
  if (aggregates.empty()) return std::nullopt;
  std::size_t wrong = 0;
  for (const auto& a : aggregates) {
    if (a.label != truth.at(a.example_id)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(aggregates.size());
}

std::optional<double> mean_absolute_error(std::span<const AggregateLabel> aggregates,
                                          const GroundTruth& truth) {
  if (aggregates.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& a : aggregates) {
    sum += std::abs(truth.at(a.example_id).value() - a.soft_p1);
  }
  return sum / static_cast<double>(aggregates.size());
}

TrialReport make_report(const CollectionOutcome& outcome, const GroundTruth& truth,
                        std::string config) {
  TrialReport r;
  r.method = outcome.method;
  r.strategy = outcome.strategy;
  r.config = std::move(config);
  r.n_labeled = outcome.n_labeled();
  r.labels_spent = outcome.ledger.spent();
  if (r.n_labeled > 0) {
    r.avg_k = static_cast<double>(r.labels_spent) / static_cast<double>(r.n_labeled);
  }
  r.error_rate = error_rate(outcome.aggregates, truth);
  r.mae = mean_absolute_error(outcome.aggregates, truth);
  return r;
}

std::optional<MetricSummary> summarize_values(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  const double n = static_cast<double>(values.size());
  // Shifted by the first value: identical inputs give an exact mean and SE 0.
  const double shift = values.front();
  double delta = 0.0;
  for (double v : values) delta += v - shift;
  const double mean = shift + delta / n;
  MetricSummary s;
  s.mean = mean;
  s.count = values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

namespace {

template <typename Getter>
std::optional<MetricSummary> summarize_field(std::span<const TrialReport> trials,
                                             Getter get) {
  std::vector<double> values;
  values.reserve(trials.size());
  for (const auto& t : trials) {
    if (auto v = get(t)) values.push_back(*v);
  }
  return summarize_values(values);
}

}  // namespace

TrialSummary summarize(std::span<const TrialReport> trials) {
  if (trials.empty()) {
    throw Error(ErrorCode::kConfigError, "cannot summarize zero trials");
  }
  const auto& first = trials.front();
  for (const auto& t : trials) {
    if (t.method != first.method || t.strategy != first.strategy ||
        t.config != first.config) {
      throw Error(ErrorCode::kConfigError,
                  "cannot summarize trials from different configurations ('" +
                      first.config + "' vs '" + t.config + "')");
    }
  }
  TrialSummary s;
  s.method = first.method;
  s.strategy = first.strategy;
  s.config = first.config;
  s.trials = trials.size();
  s.n_labeled = *summarize_field(trials, [](const TrialReport& t) {
    return std::optional<double>(static_cast<double>(t.n_labeled));
  });
  s.avg_k = summarize_field(trials, [](const TrialReport& t) { return t.avg_k; });
  s.error_rate =
      summarize_field(trials, [](const TrialReport& t) { return t.error_rate; });
  s.mae = summarize_field(trials, [](const TrialReport& t) { return t.mae; });
  return s;
}

std::vector<CalibrationBin> calibration_bins(std::span<const AggregateLabel> aggregates,
                                             const GroundTruth& truth,
                                             std::size_t n_bins) {
  std::vector<CalibrationBin> bins(n_bins);
  std::vector<std::size_t> correct(n_bins, 0);
  for (std::size_t b = 0; b < n_bins; ++b) {
    bins[b].lo = static_cast<double>(b) / static_cast<double>(n_bins);
    bins[b].hi = static_cast<double>(b + 1) / static_cast<double>(n_bins);
  }
  for (const auto& a : aggregates) {
    auto b = static_cast<std::size_t>(a.confidence * static_cast<double>(n_bins));
    b = std::min(b, n_bins - 1);
    ++bins[b].count;
    bins[b].mean_confidence += a.confidence;
    if (a.label == truth.at(a.example_id)) ++correct[b];
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (bins[b].count == 0) continue;
    const double n = static_cast<double>(bins[b].count);
    bins[b].mean_confidence /= n;
    bins[b].accuracy = static_cast<double>(correct[b]) / n;
  }
  return bins;
}

}  // namespace gtx
