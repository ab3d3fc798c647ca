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

#include "gtx/strategies.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

namespace gtx {

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kThreshold: return "threshold";
    case Strategy::kUncertainty: return "uncertainty";
  }
  return "?";
}

void BudgetLedger::charge(std::size_t example_index) {
  if (exhausted()) {
    throw Error(ErrorCode::kInvalidValue, "labeling budget already spent");
  }
  ++per_example_.at(example_index);
  ++spent_;
}

void ThresholdConfig::validate(std::size_t n_labelers) const {
  std::vector<std::string> problems;
  if (!(tau > 0.5 && tau <= 1.0)) {
    std::ostringstream os;
    os << "tau must lie in (0.5, 1], got " << tau;
    problems.push_back(os.str());
  }
  if (kappa < 1) problems.emplace_back("kappa must be >= 1");
  if (kappa > n_labelers) {
    problems.push_back("kappa (" + std::to_string(kappa) +
                       ") exceeds the number of labelers (" +
                       std::to_string(n_labelers) + ")");
  }
  if (fixed_count && (*fixed_count < 1 || *fixed_count > kappa)) {
    problems.push_back("fixed count " + std::to_string(*fixed_count) +
                       " must lie in [1, kappa]");
  }
  if (problems.empty()) return;
  std::string msg = "invalid threshold config:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw Error(ErrorCode::kConfigError, msg);
}

const AggregateLabel* CollectionOutcome::find(ExampleId id) const {
  auto it = std::lower_bound(
      aggregates.begin(), aggregates.end(), id,
      [](const AggregateLabel& a, ExampleId key) { return a.example_id < key; });
  if (it == aggregates.end() || it->example_id != id) return nullptr;
  return &*it;
}

namespace {

// Shared per-run state for both drivers.
class Collector {
 public:
  Collector(const SimDataset& dataset, std::span<const SimLabeler> labelers,
            const EstimateTable& estimates, std::uint64_t budget, Method method,
            Strategy strategy, Rng& rng, const ClassPrior& prior)
      : dataset_(dataset), labelers_(labelers), rng_(rng), prior_(prior) {
    outcome_.method = method;
    outcome_.strategy = strategy;
    outcome_.ledger = BudgetLedger(budget, dataset.size());
    accuracy_.reserve(labelers.size());
    for (const auto& l : labelers) {
      if (method == Method::kMV) {
        const auto* e = estimates.find(l.id);
        accuracy_.push_back(VoteWeight::from_accuracy(e ? e->accuracy() : 0.5));
      } else {
        accuracy_.push_back(VoteWeight::from_accuracy(estimates.at(l.id).accuracy()));
      }
    }
    const std::uint64_t reserve =
        std::min<std::uint64_t>(budget, dataset.size() * labelers.size());
    outcome_.event_log.reserve(static_cast<std::size_t>(reserve));
  }

  const BudgetLedger& ledger() const { return outcome_.ledger; }
  std::size_t pool_size() const { return labelers_.size(); }
  const ClassPrior& prior() const { return prior_; }

  // Requires budget left and an unused labeler for the example.
  AggregateLabel collect(std::size_t index, std::vector<LabelerId>& used,
                         StreamingAggregator& agg, double priority) {
    const SimExample& example = dataset_.examples[index];
    const SimLabeler& labeler =
        select_labeler(example.id, used, labelers_, rng_);
    const LabelRecord record = elicit_label(labeler, example, used, rng_);
    used.push_back(labeler.id);
    agg.add(record.value,
            accuracy_[static_cast<std::size_t>(&labeler - labelers_.data())]);
    outcome_.ledger.charge(index);
    const AggregateLabel current = agg.current(example.id);
    outcome_.event_log.push_back({outcome_.ledger.spent(), example.id,
                                  labeler.id, record.value, priority,
                                  current.label, current.confidence,
                                  current.soft_p1});
    return current;
  }

  void add_aggregate(const AggregateLabel& a) { outcome_.aggregates.push_back(a); }

  CollectionOutcome finish() { return std::move(outcome_); }

 private:
  const SimDataset& dataset_;
  std::span<const SimLabeler> labelers_;
  Rng& rng_;
  ClassPrior prior_;
  std::vector<VoteWeight> accuracy_;
  CollectionOutcome outcome_;
};

double prior_uncertainty(const ClassPrior& prior) {
  return 1.0 - std::max(prior.p0(), prior.p1());
}

}  // namespace

CollectionOutcome run_confidence_threshold(
    const SimDataset& dataset, std::span<const SimLabeler> labelers,
    const EstimateTable& estimates, const ThresholdConfig& config,
    std::uint64_t budget, Method method, Rng& rng, const ClassPrior& prior) {
  config.validate(labelers.size());
  Collector collector(dataset, labelers, estimates, budget, method,
                      Strategy::kThreshold, rng, prior);
  std::vector<LabelerId> used;
  used.reserve(config.kappa);
  const std::uint32_t cap = config.fixed_count.value_or(config.kappa);

  for (std::size_t i = 0; i < dataset.size() && !collector.ledger().exhausted();
       ++i) {
    used.clear();
    StreamingAggregator agg(method, prior);
    AggregateLabel current;
    double priority = prior_uncertainty(prior);
    while (!collector.ledger().exhausted() && used.size() < cap &&
           used.size() < collector.pool_size()) {
      current = collector.collect(i, used, agg, priority);
      priority = 1.0 - current.confidence;
      if (!config.fixed_count && current.confidence >= config.tau - kThresholdSlack) {
        break;
      }
    }
    if (agg.count() > 0) collector.add_aggregate(current);
  }
  return collector.finish();
}

CollectionOutcome run_uncertainty_sampling(
    const SimDataset& dataset, std::span<const SimLabeler> labelers,
    const EstimateTable& estimates, std::uint64_t budget, Method method,
    Rng& rng, const ClassPrior& prior) {
  Collector collector(dataset, labelers, estimates, budget, method,
                      Strategy::kUncertainty, rng, prior);
  const std::size_t n = dataset.size();
  std::vector<std::vector<LabelerId>> used(n);
  std::vector<StreamingAggregator> agg(n, StreamingAggregator(method, prior));
  std::vector<AggregateLabel> current(n);
  if (labelers.empty()) return collector.finish();

  // First pass: one label per example, in id order.
  const double initial = prior_uncertainty(prior);
  std::size_t covered = 0;
  for (; covered < n && !collector.ledger().exhausted(); ++covered) {
    current[covered] = collector.collect(covered, used[covered], agg[covered], initial);
  }

  // Highest uncertainty first, then fewest labels, then lowest id.
  struct Entry {
    double uncertainty;
    std::size_t n_labels;
    std::size_t index;
    bool operator<(const Entry& o) const {
      if (uncertainty != o.uncertainty) return uncertainty > o.uncertainty;
      if (n_labels != o.n_labels) return n_labels < o.n_labels;
      return index < o.index;
    }
  };
  std::set<Entry> queue;
  if (covered == n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i].size() < labelers.size()) {
        queue.insert({1.0 - current[i].confidence, used[i].size(), i});
      }
    }
  }
  while (!collector.ledger().exhausted() && !queue.empty()) {
    const Entry top = *queue.begin();
    queue.erase(queue.begin());
    const std::size_t i = top.index;
    current[i] = collector.collect(i, used[i], agg[i], top.uncertainty);
    if (used[i].size() < labelers.size()) {
      queue.insert({1.0 - current[i].confidence, used[i].size(), i});
    }
  }

  for (std::size_t i = 0; i < covered; ++i) collector.add_aggregate(current[i]);
  return collector.finish();
}

}  // namespace gtx
