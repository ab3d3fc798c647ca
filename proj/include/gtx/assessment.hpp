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

// Labeler accuracy estimation from an expertly labeled assessment set. The
// estimate is the fraction of assessment items a labeler got right, clamped
// into [kMinAccuracy, kMaxAccuracy]. Assessment labels never touch the
// collection budget.

#ifndef GTX_ASSESSMENT_HPP_
#define GTX_ASSESSMENT_HPP_

#include <span>
#include <unordered_map>
#include <vector>

#include "gtx/core.hpp"
#include "gtx/simulation.hpp"

namespace gtx {

struct AssessmentItem {
  ExampleId example_id{};
  LabelValue true_label = LabelValue::zero();
};

class AssessmentSet {
 public:
  AssessmentSet() = default;
  // Throws kInvalidValue on duplicate example ids.
  explicit AssessmentSet(std::vector<AssessmentItem> items);

  std::span<const AssessmentItem> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<AssessmentItem> items_;
};

using LabelerResponses = std::unordered_map<ExampleId, LabelValue>;

// Unclamped fraction correct. Throws kEmptyAssessment / kIncompleteAssessment.
double raw_accuracy(const LabelerResponses& responses,
                    const AssessmentSet& assessment);

LabelerEstimate estimate_accuracy(LabelerId labeler,
                                  const LabelerResponses& responses,
                                  const AssessmentSet& assessment);

// Builds an assessment set of `size` items with balanced true labels drawn
// from `rng` (one draw per item). Ids are 0..size-1.
AssessmentSet make_assessment_set(std::size_t size, Rng& rng);

// Every labeler answers every item once, labeler 0 first and items in order,
// one draw per response.
EstimateTable run_assessment(std::span<const SimLabeler> labelers,
                             const AssessmentSet& assessment, Rng& rng);

// Same draws as run_assessment, returning the unclamped proportions.
std::vector<double> run_assessment_raw(std::span<const SimLabeler> labelers,
                                       const AssessmentSet& assessment, Rng& rng);

// True accuracies wrapped as (clamped) estimates.
EstimateTable oracle_estimates(std::span<const SimLabeler> labelers);

}  // namespace gtx

#endif  // GTX_ASSESSMENT_HPP_
