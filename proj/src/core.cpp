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

#include "gtx/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gtx {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidValue: return "InvalidValue";
    case ErrorCode::kMissingEstimate: return "MissingEstimate";
    case ErrorCode::kDuplicateLabeler: return "DuplicateLabeler";
    case ErrorCode::kEmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::kEmptyAssessment: return "EmptyAssessment";
    case ErrorCode::kIncompleteAssessment: return "IncompleteAssessment";
    case ErrorCode::kAlreadyLabeled: return "AlreadyLabeled";
    case ErrorCode::kLabelersExhausted: return "LabelersExhausted";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

LabelerEstimate::LabelerEstimate(LabelerId labeler_id, double accuracy)
    : labeler_id_(labeler_id) {
  if (std::isnan(accuracy)) {
    throw Error(ErrorCode::kInvalidValue,
                "accuracy for labeler " +
                    std::to_string(to_underlying(labeler_id)) + " is NaN");
  }
  accuracy_ = std::clamp(accuracy, kMinAccuracy, kMaxAccuracy);
}

EstimateTable::EstimateTable(std::vector<LabelerEstimate> estimates) {
  for (const auto& e : estimates) set(e);
}

namespace {

auto lower_bound_id(std::vector<LabelerEstimate>& v, LabelerId id) {
  return std::lower_bound(v.begin(), v.end(), id,
                          [](const LabelerEstimate& e, LabelerId key) {
                            return e.labeler_id() < key;
                          });
}

}  // namespace

void EstimateTable::set(const LabelerEstimate& estimate) {
  auto it = lower_bound_id(entries_, estimate.labeler_id());
  if (it != entries_.end() && it->labeler_id() == estimate.labeler_id()) {
    *it = estimate;
  } else {
    entries_.insert(it, estimate);
  }
}

const LabelerEstimate* EstimateTable::find(LabelerId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const LabelerEstimate& e, LabelerId key) {
                               return e.labeler_id() < key;
                             });
  if (it == entries_.end() || it->labeler_id() != id) return nullptr;
  return &*it;
}

const LabelerEstimate& EstimateTable::at(LabelerId id) const {
  const LabelerEstimate* e = find(id);
  if (e == nullptr) {
    throw Error(ErrorCode::kMissingEstimate,
                "no accuracy estimate for labeler " +
                    std::to_string(to_underlying(id)));
  }
  return *e;
}

ClassPrior::ClassPrior(double p0, double p1) : p_{p0, p1} {
  if (!(p0 >= 0.0) || !(p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidValue,
                "class prior must be non-negative and sum to 1, got (" +
                    std::to_string(p0) + ", " + std::to_string(p1) + ")");
  }
}

PosteriorResult PosteriorResult::from_probabilities(double p0, double p1) {
  PosteriorResult r;
  r.p = {p0, p1};
  r.hard_label = p1 > p0 ? LabelValue::one() : LabelValue::zero();
  r.confidence = std::max(p0, p1);
  r.uncertainty = 1.0 - r.confidence;
  return r;
}

std::vector<LabelRecord> canonical_order(std::span<const LabelRecord> labels) {
  std::vector<LabelRecord> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const LabelRecord& a, const LabelRecord& b) {
              return a.labeler_id < b.labeler_id;
            });
  return sorted;
}

void check_label_set(std::span<const LabelRecord> labels) {
  if (labels.empty()) return;
  const ExampleId example = labels.front().example_id;
  for (const auto& r : labels) {
    if (r.example_id != example) {
      throw Error(ErrorCode::kInvalidValue,
                  "label set mixes examples " +
                      std::to_string(to_underlying(example)) + " and " +
                      std::to_string(to_underlying(r.example_id)));
    }
  }
  const auto sorted = canonical_order(labels);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].labeler_id == sorted[i - 1].labeler_id) {
      throw Error(ErrorCode::kDuplicateLabeler,
                  "labeler " + std::to_string(to_underlying(sorted[i].labeler_id)) +
                      " labeled example " + std::to_string(to_underlying(example)) +
                      " twice");
    }
  }
}

namespace {

// Assumes `labels` is already in canonical order.
double log_likelihood_sorted(std::span<const LabelRecord> labels,
                             const EstimateTable& estimates,
                             LabelValue hypothesis) {
  double sum = 0.0;
  for (const auto& r : labels) {
    const double a = estimates.at(r.labeler_id).accuracy();
    sum += r.value == hypothesis ? std::log(a) : std::log1p(-a);
  }
  return sum;
}

}  // namespace

double log_likelihood(std::span<const LabelRecord> labels,
                      const EstimateTable& estimates, LabelValue hypothesis) {
  check_label_set(labels);
  const auto sorted = canonical_order(labels);
  return log_likelihood_sorted(sorted, estimates, hypothesis);
}

PosteriorResult posterior_from_log_likelihoods(
    const std::array<double, 2>& log_likelihood, const ClassPrior& prior) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::array<double, 2> joint{};
  for (std::size_t y = 0; y < 2; ++y) {
    const double py = y == 0 ? prior.p0() : prior.p1();
    joint[y] = py > 0.0 ? std::log(py) + log_likelihood[y] : kNegInf;
  }
  const double m = std::max(joint[0], joint[1]);
  const double e0 = std::exp(joint[0] - m);
  const double e1 = std::exp(joint[1] - m);
  const double z = e0 + e1;
  // The losing class gets e/z and the winner its complement, so that
  // confidence == max(p1, 1 - p1) holds bit for bit.
  if (e1 > e0) {
    const double lo = e0 / z;
    return PosteriorResult::from_probabilities(lo, 1.0 - lo);
  }
  const double lo = e1 / z;
  return PosteriorResult::from_probabilities(1.0 - lo, lo);
}

PosteriorResult posterior(std::span<const LabelRecord> labels,
                          const EstimateTable& estimates,
                          const ClassPrior& prior) {
  check_label_set(labels);
  const auto sorted = canonical_order(labels);
  return posterior_from_log_likelihoods(
      {log_likelihood_sorted(sorted, estimates, LabelValue::zero()),
       log_likelihood_sorted(sorted, estimates, LabelValue::one())},
      prior);
}

std::pair<LabelValue, double> hard_label(const PosteriorResult& posterior) {
  const auto r = PosteriorResult::from_probabilities(posterior.p0(), posterior.p1());
  return {r.hard_label, r.confidence};
}

double uncertainty(const PosteriorResult& posterior) {
  return 1.0 - std::max(posterior.p0(), posterior.p1());
}

}  // namespace gtx
