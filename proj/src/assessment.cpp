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

#include "gtx/assessment.hpp"

#include <string>
#include <unordered_set>

namespace gtx {

AssessmentSet::AssessmentSet(std::vector<AssessmentItem> items)
    : items_(std::move(items)) {
  std::unordered_set<ExampleId> seen;
  for (const auto& item : items_) {
    if (!seen.insert(item.example_id).second) {
      throw Error(ErrorCode::kInvalidValue,
                  "assessment set lists example " +
                      std::to_string(to_underlying(item.example_id)) + " twice");
    }
  }
}

double raw_accuracy(const LabelerResponses& responses,
                    const AssessmentSet& assessment) {
  if (assessment.empty()) {
    throw Error(ErrorCode::kEmptyAssessment, "assessment set is empty");
  }
  std::size_t correct = 0;
  for (const auto& item : assessment.items()) {
    auto it = responses.find(item.example_id);
    if (it == responses.end()) {
      throw Error(ErrorCode::kIncompleteAssessment,
                  "no response for assessment example " +
                      std::to_string(to_underlying(item.example_id)));
    }
    if (it->second == item.true_label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(assessment.size());
}

LabelerEstimate estimate_accuracy(LabelerId labeler,
                                  const LabelerResponses& responses,
                                  const AssessmentSet& assessment) {
  return LabelerEstimate(labeler, raw_accuracy(responses, assessment));
}

AssessmentSet make_assessment_set(std::size_t size, Rng& rng) {
  std::vector<AssessmentItem> items;
  items.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    items.push_back({ExampleId{i}, LabelValue(rng.bernoulli(0.5) ? 1 : 0)});
  }
  return AssessmentSet(std::move(items));
}

namespace {

LabelerResponses collect_responses(const SimLabeler& labeler,
                                   const AssessmentSet& assessment, Rng& rng) {
  LabelerResponses responses;
  responses.reserve(assessment.size());
  for (const auto& item : assessment.items()) {
    const auto record =
        elicit_label(labeler, SimExample{item.example_id, item.true_label}, {}, rng);
    responses.emplace(item.example_id, record.value);
  }
  return responses;
}

}  // namespace

EstimateTable run_assessment(std::span<const SimLabeler> labelers,
                             const AssessmentSet& assessment, Rng& rng) {
  if (!labelers.empty() && assessment.empty()) {
    throw Error(ErrorCode::kEmptyAssessment, "assessment set is empty");
  }
  EstimateTable table;
  for (const auto& l : labelers) {
    table.set(estimate_accuracy(l.id, collect_responses(l, assessment, rng),
                                assessment));
  }
  return table;
}

std::vector<double> run_assessment_raw(std::span<const SimLabeler> labelers,
                                       const AssessmentSet& assessment, Rng& rng) {
  std::vector<double> out;
  out.reserve(labelers.size());
  for (const auto& l : labelers) {
    out.push_back(raw_accuracy(collect_responses(l, assessment, rng), assessment));
  }
  return out;
}

EstimateTable oracle_estimates(std::span<const SimLabeler> labelers) {
  EstimateTable table;
  for (const auto& l : labelers) table.set(LabelerEstimate(l.id, l.true_accuracy));
  return table;
}

}  // namespace gtx
