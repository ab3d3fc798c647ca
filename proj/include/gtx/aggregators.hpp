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

// Label aggregation methods behind one interface.
//
//   MV   every vote counts once; soft value is the class-1 vote share.
//   WMV  votes weighted by estimated accuracy; soft value is the class-1
//        weight share.
//   SV   each voter puts accuracy on its vote and 1 - accuracy on the other
//        class; soft value is class-1 mass over the number of voters.
//   GTX  naive-Bayes posterior (see core.hpp); soft value is P(class 1).
//
// All methods resolve exact ties to class 0 and report
// confidence = max(soft_p1, 1 - soft_p1).

#ifndef GTX_AGGREGATORS_HPP_
#define GTX_AGGREGATORS_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "gtx/core.hpp"
#include "gtx/types.hpp"

namespace gtx {

enum class Method { kMV, kWMV, kSV, kGTX };

inline constexpr std::array<Method, 4> kAllMethods = {Method::kMV, Method::kWMV,
                                                      Method::kSV, Method::kGTX};

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

struct AggregateLabel {
  ExampleId example_id{};
  LabelValue label = LabelValue::zero();
  double confidence = 0.5;
  Method method = Method::kGTX;
  double soft_p1 = 0.5;
  std::uint32_t n_labels = 0;
};

AggregateLabel aggregate_mv(std::span<const LabelRecord> labels);
AggregateLabel aggregate_wmv(std::span<const LabelRecord> labels,
                             const EstimateTable& estimates);
AggregateLabel aggregate_sv(std::span<const LabelRecord> labels,
                            const EstimateTable& estimates);
AggregateLabel aggregate_gtx(std::span<const LabelRecord> labels,
                             const EstimateTable& estimates,
                             const ClassPrior& prior = ClassPrior::uniform());

AggregateLabel aggregate(Method method, std::span<const LabelRecord> labels,
                         const EstimateTable& estimates,
                         const ClassPrior& prior = ClassPrior::uniform());

// A voter's clamped accuracy with its logs precomputed.
struct VoteWeight {
  double accuracy = 0.5;
  double log_accuracy = 0.0;
  double log_error = 0.0;

  static VoteWeight from_accuracy(double accuracy);
};

// Incremental form used by the collection strategies: labels are added one at
// a time and the current aggregate is O(1) to read. Sums follow insertion
// order, so results may differ from the batch functions in the last ulp.
class StreamingAggregator {
 public:
  explicit StreamingAggregator(Method method,
                               const ClassPrior& prior = ClassPrior::uniform());

  // `accuracy` is the voter's clamped estimate; ignored by MV.
  void add(LabelValue vote, double accuracy) {
    add(vote, VoteWeight::from_accuracy(accuracy));
  }
  void add(LabelValue vote, const VoteWeight& weight);

  std::uint32_t count() const { return count_; }
  Method method() const { return method_; }

  // Requires count() > 0; throws kEmptyLabelSet otherwise.
  AggregateLabel current(ExampleId example_id) const;

 private:
  Method method_;
  ClassPrior prior_;
  std::uint32_t count_ = 0;
  // MV: votes, WMV: weights, SV: masses, GTX: log-likelihoods.
  std::array<double, 2> acc_{0.0, 0.0};
};

}  // namespace gtx

#endif  // GTX_AGGREGATORS_HPP_
