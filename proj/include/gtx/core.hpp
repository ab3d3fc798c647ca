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

// One-coin naive-Bayes model of a binary true label given noisy labels from
// labelers with known (estimated) accuracies.
//
// Every labeler j answers correctly with probability alpha_j regardless of
// the true class, and answers independently of the others. The posterior of
// class y is proportional to
//
//   prior(y) * prod_j alpha_j^[label_j == y] * (1 - alpha_j)^[label_j != y]
//
// which is accumulated in log space and normalized with max subtraction so
// that long label sets never underflow.

#ifndef GTX_CORE_HPP_
#define GTX_CORE_HPP_

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "gtx/types.hpp"

namespace gtx {

// Accuracy estimates are clamped into [kMinAccuracy, kMaxAccuracy] so that no
// single label can force a posterior of exactly 0 or 1.
inline constexpr double kMinAccuracy = 0.01;
inline constexpr double kMaxAccuracy = 0.99;

class LabelerEstimate {
 public:
  // Clamps `accuracy` into [kMinAccuracy, kMaxAccuracy]; NaN is rejected.
  LabelerEstimate(LabelerId labeler_id, double accuracy);

  LabelerId labeler_id() const { return labeler_id_; }
  double accuracy() const { return accuracy_; }

 private:
  LabelerId labeler_id_;
  double accuracy_;
};

// Labeler id -> estimate, stored flat and sorted by id. Labeler pools are
// small (tens of labelers) so lookups are a short binary search.
class EstimateTable {
 public:
  EstimateTable() = default;
  explicit EstimateTable(std::vector<LabelerEstimate> estimates);

  // Inserts or replaces the estimate for its labeler.
  void set(const LabelerEstimate& estimate);

  const LabelerEstimate* find(LabelerId id) const;
  // Throws kMissingEstimate naming the labeler.
  const LabelerEstimate& at(LabelerId id) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const LabelerEstimate> entries() const { return entries_; }

 private:
  std::vector<LabelerEstimate> entries_;
};

class ClassPrior {
 public:
  // Requires p0, p1 >= 0 and |p0 + p1 - 1| <= 1e-12.
  ClassPrior(double p0, double p1);

  static ClassPrior uniform() { return ClassPrior(0.5, 0.5); }

  double p0() const { return p_[0]; }
  double p1() const { return p_[1]; }
  double operator[](LabelValue y) const { return p_[y.index()]; }

 private:
  std::array<double, 2> p_;
};

struct PosteriorResult {
  std::array<double, 2> p;
  LabelValue hard_label = LabelValue::zero();
  double confidence = 0.5;
  double uncertainty = 0.5;

  double p0() const { return p[0]; }
  double p1() const { return p[1]; }

  // Derives the hard label (ties go to class 0), confidence and uncertainty.
  static PosteriorResult from_probabilities(double p0, double p1);
};

// Log of P(labels | true class = hypothesis). Empty sets give 0.
double log_likelihood(std::span<const LabelRecord> labels,
                      const EstimateTable& estimates, LabelValue hypothesis);

// Normalizes prior(y) * exp(log_likelihood[y]) over both classes.
PosteriorResult posterior_from_log_likelihoods(
    const std::array<double, 2>& log_likelihood, const ClassPrior& prior);

PosteriorResult posterior(std::span<const LabelRecord> labels,
                          const EstimateTable& estimates,
                          const ClassPrior& prior = ClassPrior::uniform());

std::pair<LabelValue, double> hard_label(const PosteriorResult& posterior);

double uncertainty(const PosteriorResult& posterior);

// Label records sorted by labeler id. Sums over a canonical order keep
// results bit-identical under any permutation of the input.
std::vector<LabelRecord> canonical_order(std::span<const LabelRecord> labels);

// Throws kDuplicateLabeler if a labeler appears twice or kInvalidValue if the
// records span more than one example.
void check_label_set(std::span<const LabelRecord> labels);

}  // namespace gtx

#endif  // GTX_CORE_HPP_
