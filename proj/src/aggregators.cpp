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

#include "gtx/aggregators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gtx {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kMV: return "MV";
    case Method::kWMV: return "WMV";
    case Method::kSV: return "SV";
    case Method::kGTX: return "GTX";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "mv") return Method::kMV;
  if (lower == "wmv") return Method::kWMV;
  if (lower == "sv") return Method::kSV;
  if (lower == "gtx") return Method::kGTX;
  return std::nullopt;
}

namespace {

AggregateLabel from_soft(ExampleId id, Method method, double soft_p1,
                         bool class1_wins, std::uint32_t n) {
  AggregateLabel a;
  a.example_id = id;
  a.method = method;
  a.soft_p1 = soft_p1;
  a.label = class1_wins ? LabelValue::one() : LabelValue::zero();
  a.confidence = std::max(soft_p1, 1.0 - soft_p1);
  a.n_labels = n;
  return a;
}

AggregateLabel from_shares(ExampleId id, Method method,
                           const std::array<double, 2>& mass, double total,
                           std::uint32_t n) {
  return from_soft(id, method, mass[1] / total, mass[1] > mass[0], n);
}

AggregateLabel from_posterior(ExampleId id, const PosteriorResult& post,
                              std::uint32_t n) {
  AggregateLabel a;
  a.example_id = id;
  a.method = Method::kGTX;
  a.soft_p1 = post.p1();
  a.label = post.hard_label;
  a.confidence = post.confidence;
  a.n_labels = n;
  return a;
}

std::vector<LabelRecord> checked(std::span<const LabelRecord> labels) {
  if (labels.empty()) {
    throw Error(ErrorCode::kEmptyLabelSet, "cannot aggregate an empty label set");
  }
  check_label_set(labels);
  return canonical_order(labels);
}

}  // namespace

AggregateLabel aggregate_mv(std::span<const LabelRecord> labels) {
  const auto sorted = checked(labels);
  std::array<double, 2> votes{0.0, 0.0};
  for (const auto& r : sorted) votes[r.value.index()] += 1.0;
  const auto n = static_cast<std::uint32_t>(sorted.size());
  return from_shares(sorted.front().example_id, Method::kMV, votes, n, n);
}

AggregateLabel aggregate_wmv(std::span<const LabelRecord> labels,
                             const EstimateTable& estimates) {
  const auto sorted = checked(labels);
  std::array<double, 2> weight{0.0, 0.0};
  for (const auto& r : sorted) {
    weight[r.value.index()] += estimates.at(r.labeler_id).accuracy();
  }
  return from_shares(sorted.front().example_id, Method::kWMV, weight,
                     weight[0] + weight[1],
                     static_cast<std::uint32_t>(sorted.size()));
}

AggregateLabel aggregate_sv(std::span<const LabelRecord> labels,
                            const EstimateTable& estimates) {
  const auto sorted = checked(labels);
  std::array<double, 2> mass{0.0, 0.0};
  for (const auto& r : sorted) {
    const double a = estimates.at(r.labeler_id).accuracy();
    mass[r.value.index()] += a;
    mass[r.value.flipped().index()] += 1.0 - a;
  }
  const auto n = static_cast<std::uint32_t>(sorted.size());
  return from_shares(sorted.front().example_id, Method::kSV, mass, n, n);
}

AggregateLabel aggregate_gtx(std::span<const LabelRecord> labels,
                             const EstimateTable& estimates,
                             const ClassPrior& prior) {
  const auto sorted = checked(labels);
  return from_posterior(sorted.front().example_id,
                        posterior(sorted, estimates, prior),
                        static_cast<std::uint32_t>(sorted.size()));
}

AggregateLabel aggregate(Method method, std::span<const LabelRecord> labels,
                         const EstimateTable& estimates,
                         const ClassPrior& prior) {
  switch (method) {
    case Method::kMV: return aggregate_mv(labels);
    case Method::kWMV: return aggregate_wmv(labels, estimates);
    case Method::kSV: return aggregate_sv(labels, estimates);
    case Method::kGTX: return aggregate_gtx(labels, estimates, prior);
  }
  throw Error(ErrorCode::kInvalidValue, "unknown aggregation method");
}

StreamingAggregator::StreamingAggregator(Method method, const ClassPrior& prior)
    : method_(method), prior_(prior) {}

VoteWeight VoteWeight::from_accuracy(double accuracy) {
  return {accuracy, std::log(accuracy), std::log1p(-accuracy)};
}

void StreamingAggregator::add(LabelValue vote, const VoteWeight& weight) {
  const double accuracy = weight.accuracy;
  const std::size_t v = vote.index();
  const std::size_t other = vote.flipped().index();
  switch (method_) {
    case Method::kMV:
      acc_[v] += 1.0;
      break;
    case Method::kWMV:
      acc_[v] += accuracy;
      break;
    case Method::kSV:
      acc_[v] += accuracy;
      acc_[other] += 1.0 - accuracy;
      break;
    case Method::kGTX:
      acc_[v] += weight.log_accuracy;
      acc_[other] += weight.log_error;
      break;
  }
  ++count_;
}

AggregateLabel StreamingAggregator::current(ExampleId example_id) const {
  if (count_ == 0) {
    throw Error(ErrorCode::kEmptyLabelSet, "no labels added yet");
  }
  switch (method_) {
    case Method::kMV:
    case Method::kSV:
      return from_shares(example_id, method_, acc_, count_, count_);
    case Method::kWMV:
      return from_shares(example_id, method_, acc_, acc_[0] + acc_[1], count_);
    case Method::kGTX:
      return from_posterior(example_id,
                            posterior_from_log_likelihoods(acc_, prior_), count_);
  }
  throw Error(ErrorCode::kInvalidValue, "unknown aggregation method");
}

}  // namespace gtx
