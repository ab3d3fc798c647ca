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

// Budgeted label collection.
//
// Confidence threshold: examples are visited in id order and labeled one
// label at a time until the aggregate confidence reaches tau, kappa labels
// are collected, the labeler pool runs out, or the budget is spent. With a
// fixed count set, the confidence test is replaced by "stop after c labels"
// (used for MV and WMV, whose confidence is 1 after a single label).
//
// Uncertainty sampling: every example gets one label in id order, then the
// example with the largest 1 - max-class confidence gets the next label
// until the budget or every labeler pool is exhausted. Ties go to the example
// with fewer labels, then to the lowest id.
//
// Both drivers draw from the simulation Rng: one draw to select a labeler,
// one draw for its response, per label.

#ifndef GTX_STRATEGIES_HPP_
#define GTX_STRATEGIES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gtx/aggregators.hpp"
#include "gtx/core.hpp"
#include "gtx/simulation.hpp"

namespace gtx {

enum class Strategy { kThreshold, kUncertainty };

std::string_view strategy_name(Strategy strategy);

// Absorbs rounding when a confidence equal to tau in exact arithmetic comes
// out one ulp low (e.g. a single label from a 0.99 labeler at tau = 0.99).
inline constexpr double kThresholdSlack = 1e-12;

class BudgetLedger {
 public:
  BudgetLedger(std::uint64_t total, std::size_t n_examples)
      : total_(total), per_example_(n_examples, 0) {}

  std::uint64_t total() const { return total_; }
  std::uint64_t spent() const { return spent_; }
  std::uint64_t remaining() const { return total_ - spent_; }
  bool exhausted() const { return spent_ >= total_; }

  // Per-example counts indexed by dataset position (== example id).
  std::span<const std::uint32_t> per_example() const { return per_example_; }

  // Throws kInvalidValue when the budget is already spent.
  void charge(std::size_t example_index);

 private:
  std::uint64_t total_;
  std::uint64_t spent_ = 0;
  std::vector<std::uint32_t> per_example_;
};

struct ThresholdConfig {
  double tau = 0.99;
  std::uint32_t kappa = 5;
  // When set, collect exactly this many labels per example (capped by the
  // labeler pool) and ignore tau.
  std::optional<std::uint32_t> fixed_count;

  // Throws kConfigError listing every violation.
  void validate(std::size_t n_labelers) const;
};

struct CollectionEvent {
  std::uint64_t step = 0;  // labels spent after this event, starting at 1
  ExampleId example_id{};
  LabelerId labeler_id{};
  LabelValue value = LabelValue::zero();
  // The example's uncertainty when it was chosen (before this label).
  double priority = 0.5;
  LabelValue aggregate_label = LabelValue::zero();
  double confidence = 0.5;
  double soft_p1 = 0.5;
};

struct CollectionOutcome {
  Method method = Method::kGTX;
  Strategy strategy = Strategy::kThreshold;
  // Sorted by example id; only examples with at least one label.
  std::vector<AggregateLabel> aggregates;
  BudgetLedger ledger{0, 0};
  std::vector<CollectionEvent> event_log;

  std::size_t n_labeled() const { return aggregates.size(); }
  const AggregateLabel* find(ExampleId id) const;
};

CollectionOutcome run_confidence_threshold(
    const SimDataset& dataset, std::span<const SimLabeler> labelers,
    const EstimateTable& estimates, const ThresholdConfig& config,
    std::uint64_t budget, Method method, Rng& rng,
    const ClassPrior& prior = ClassPrior::uniform());

CollectionOutcome run_uncertainty_sampling(
    const SimDataset& dataset, std::span<const SimLabeler> labelers,
    const EstimateTable& estimates, std::uint64_t budget, Method method,
    Rng& rng, const ClassPrior& prior = ClassPrior::uniform());

}  // namespace gtx

#endif  // GTX_STRATEGIES_HPP_
