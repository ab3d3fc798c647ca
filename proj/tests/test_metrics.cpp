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


#include <random>

#include "doctest.h"
#include "gtx/metrics.hpp"
#include "gtx/strategies.hpp"

using namespace gtx;

namespace {

AggregateLabel agg(std::uint64_t id, double soft_p1) {
  AggregateLabel a;
  a.example_id = ExampleId{id};
  a.soft_p1 = soft_p1;
  a.label = soft_p1 > 0.5 ? LabelValue::one() : LabelValue::zero();
  a.confidence = std::max(soft_p1, 1.0 - soft_p1);
  a.n_labels = 1;
  return a;
}

GroundTruth truth_of(std::initializer_list<int> ys) {
  std::vector<std::pair<ExampleId, LabelValue>> v;
  std::uint64_t i = 0;
  for (int y : ys) v.emplace_back(ExampleId{i++}, LabelValue(y));
  return GroundTruth(std::move(v));
}

TrialReport report(double err, std::string config = "c") {
  TrialReport r;
  r.config = std::move(config);
  r.error_rate = err;
  r.n_labeled = 10;
  return r;
}

}  // namespace

TEST_CASE("error rate examples") {
  const auto truth = truth_of({1, 0, 1, 1});
  std::vector<AggregateLabel> all{agg(0, 0.9), agg(1, 0.1), agg(2, 0.8), agg(3, 0.7)};
  CHECK(error_rate(all, truth) == 0.0);
  all[2] = agg(2, 0.2);
  CHECK(error_rate(all, truth) == 0.25);
  CHECK_FALSE(error_rate({}, truth).has_value());
  CHECK_FALSE(mean_absolute_error({}, truth).has_value());
}

TEST_CASE("error rate against a counted fixture") {
  const auto truth = truth_of({0, 1, 1, 0, 1, 0, 0, 1, 1, 0});
  const int predicted[] = {0, 1, 0, 0, 1, 1, 0, 1, 0, 0};
  std::vector<AggregateLabel> aggs;
  int mismatches = 0;
  for (int i = 0; i < 10; ++i) {
    aggs.push_back(agg(i, predicted[i] ? 0.9 : 0.1));
    mismatches += predicted[i] != truth.at(ExampleId{std::uint64_t(i)}).value();
  }
  REQUIRE(mismatches == 3);
  CHECK(*error_rate(aggs, truth) == doctest::Approx(0.3));
}

TEST_CASE("mae examples") {
  const auto truth = truth_of({1, 1, 0});
  const std::vector<AggregateLabel> a{agg(0, 1.0)};
  CHECK(*mean_absolute_error(a, truth) == 0.0);
  const std::vector<AggregateLabel> b{agg(1, 0.972973)};
  CHECK(*mean_absolute_error(b, truth) == doctest::Approx(0.027027));
  const std::vector<AggregateLabel> c{agg(2, 0.65)};
  CHECK(*mean_absolute_error(c, truth) == doctest::Approx(0.65));
}

TEST_CASE("unknown ids are rejected") {
  const auto truth = truth_of({1});
  const std::vector<AggregateLabel> a{agg(5, 1.0)};
  CHECK_THROWS_AS(error_rate(a, truth), Error);
  CHECK_THROWS_AS(GroundTruth({{ExampleId{1}, LabelValue::one()},
                               {ExampleId{1}, LabelValue::one()}}),
                  Error);
}

TEST_CASE("summaries") {
  const std::vector<TrialReport> one{report(0.1)};
  auto s = summarize(one);
  CHECK(s.trials == 1);
  CHECK(s.error_rate->mean == 0.1);
  CHECK(s.error_rate->std_error == 0.0);

  const std::vector<TrialReport> two{report(0.1), report(0.2)};
  s = summarize(two);
  CHECK(s.error_rate->mean == doctest::Approx(0.15));
  CHECK(s.error_rate->std_error == doctest::Approx(0.05));

  const std::vector<TrialReport> same(100, report(0.3));
  CHECK(summarize(same).error_rate->std_error == 0.0);

  const std::vector<TrialReport> mixed{report(0.1, "a"), report(0.1, "b")};
  try {
    summarize(mixed);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
  }
  CHECK_THROWS_AS(summarize({}), Error);

  // Undefined metrics are skipped rather than counted as zero.
  std::vector<TrialReport> partial{report(0.2), report(0.4)};
  partial[1].error_rate.reset();
  s = summarize(partial);
  CHECK(s.error_rate->count == 1);
  CHECK(s.error_rate->mean == 0.2);
}

TEST_CASE("report fields") {
  CollectionOutcome out;
  out.ledger = BudgetLedger(10, 3);
  out.ledger.charge(0);
  out.ledger.charge(0);
  out.ledger.charge(1);
  out.aggregates = {agg(0, 0.9), agg(1, 0.3)};
  const auto truth = truth_of({1, 1, 0});
  const auto r = make_report(out, truth, "x");
  CHECK(r.n_labeled == 2);
  CHECK(r.labels_spent == 3);
  CHECK(*r.avg_k == 1.5);
  CHECK(*r.error_rate == 0.5);
  CHECK(*r.mae == doctest::Approx(0.4));
  CollectionOutcome empty;
  CHECK_FALSE(make_report(empty, truth, "x").avg_k.has_value());
}

TEST_CASE("error rate is at most twice the mae, order free") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::pair<ExampleId, LabelValue>> ys;
    std::vector<AggregateLabel> aggs;
    for (std::uint64_t i = 0; i < 40; ++i) {
      ys.emplace_back(ExampleId{i}, LabelValue(coin(gen) ? 1 : 0));
      aggs.push_back(agg(i, u(gen)));
    }
    const GroundTruth truth(ys);
    const double e = *error_rate(aggs, truth);
    const double m = *mean_absolute_error(aggs, truth);
    REQUIRE(e <= 2.0 * m + 1e-15);
    std::shuffle(aggs.begin(), aggs.end(), gen);
    REQUIRE(*error_rate(aggs, truth) == e);
    REQUIRE(*mean_absolute_error(aggs, truth) == doctest::Approx(m).epsilon(1e-14));
  }
}

TEST_CASE("calibration bins") {
  const auto truth = truth_of({1, 1, 0, 0});
  const std::vector<AggregateLabel> aggs{agg(0, 1.0), agg(1, 0.95), agg(2, 0.1),
                                         agg(3, 0.55)};
  const auto bins = calibration_bins(aggs, truth);
  REQUIRE(bins.size() == 10);
  CHECK(bins[9].count == 3);
  CHECK(bins[9].mean_confidence == doctest::Approx((1.0 + 0.95 + 0.9) / 3));
  CHECK(bins[9].accuracy == 1.0);
  CHECK(bins[5].count == 1);
  CHECK(bins[5].accuracy == 0.0);
  CHECK(bins[0].count == 0);
}
