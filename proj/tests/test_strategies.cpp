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
#include "gtx/assessment.hpp"
#include "gtx/strategies.hpp"
#include "oracle.hpp"

using namespace gtx;

namespace {

struct World {
  Simulation sim;
  EstimateTable estimates;
};

World world(std::uint64_t seed, std::size_t n, std::size_t labelers, double lo,
            double hi, std::size_t assess = 20) {
  SimConfig c;
  c.seed = seed;
  c.n_examples = n;
  c.n_labelers = labelers;
  c.accuracy_lo = lo;
  c.accuracy_hi = hi;
  World w{init_simulation(c), {}};
  const auto set = make_assessment_set(assess, w.sim.rng);
  w.estimates = run_assessment(w.sim.labelers, set, w.sim.rng);
  return w;
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += x + "; ";
  return s;
}

}  // namespace

TEST_CASE("budget ledger") {
  BudgetLedger l(2, 3);
  l.charge(0);
  l.charge(2);
  CHECK(l.spent() == 2);
  CHECK(l.remaining() == 0);
  CHECK(l.exhausted());
  CHECK_THROWS_AS(l.charge(1), Error);
  CHECK(l.per_example()[2] == 1);
}

TEST_CASE("threshold config validation") {
  ThresholdConfig c;
  c.kappa = 7;
  try {
    c.validate(5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
  }
  c.kappa = 5;
  c.tau = 0.5;
  CHECK_THROWS_AS(c.validate(5), Error);
  c.tau = 1.0;
  CHECK_NOTHROW(c.validate(5));
  c.fixed_count = 6;
  CHECK_THROWS_AS(c.validate(10), Error);
  auto w = world(1, 10, 5, 0.8, 1.0);
  ThresholdConfig big;
  big.kappa = 7;
  CHECK_THROWS_AS(run_confidence_threshold(w.sim.dataset, w.sim.labelers, w.estimates,
                                           big, 10, Method::kGTX, w.sim.rng),
                  Error);
}

TEST_CASE("a 0.99 pool stops after one label per example") {
  auto w = world(2, 300, 10, 1.0, 1.0);
  for (const auto& l : w.sim.labelers) CHECK(w.estimates.at(l.id).accuracy() == 0.99);
  ThresholdConfig c;
  c.tau = 0.99;
  c.kappa = 5;
  const auto out = run_confidence_threshold(w.sim.dataset, w.sim.labelers, w.estimates,
                                            c, 200, Method::kGTX, w.sim.rng);
  CHECK(out.n_labeled() == 200);
  for (const auto& a : out.aggregates) CHECK(a.n_labels == 1);
}

TEST_CASE("zero budget") {
  auto w = world(3, 50, 10, 0.8, 1.0);
  const auto draws = w.sim.rng.draws();
  const auto out = run_confidence_threshold(w.sim.dataset, w.sim.labelers, w.estimates,
                                            {}, 0, Method::kGTX, w.sim.rng);
  CHECK(out.n_labeled() == 0);
  CHECK(out.event_log.empty());
  CHECK(w.sim.rng.draws() == draws);
  const auto u = run_uncertainty_sampling(w.sim.dataset, w.sim.labelers, w.estimates, 0,
                                          Method::kGTX, w.sim.rng);
  CHECK(u.n_labeled() == 0);
}

TEST_CASE("each label costs two draws") {
  auto w = world(4, 50, 10, 0.8, 1.0);
  const auto draws = w.sim.rng.draws();
  const auto out = run_confidence_threshold(w.sim.dataset, w.sim.labelers, w.estimates,
                                            {}, 60, Method::kSV, w.sim.rng);
  CHECK(w.sim.rng.draws() - draws == 2 * out.ledger.spent());
}

TEST_CASE("budget cut keeps the partial example") {
  auto w = world(5, 100, 10, 0.6, 0.7);
  ThresholdConfig c;
  c.fixed_count = 4;
  const auto out = run_confidence_threshold(w.sim.dataset, w.sim.labelers, w.estimates,
                                            c, 10, Method::kMV, w.sim.rng);
  REQUIRE(out.n_labeled() == 3);
  CHECK(out.aggregates[0].n_labels == 4);
  CHECK(out.aggregates[1].n_labels == 4);
  CHECK(out.aggregates[2].n_labels == 2);
}

TEST_CASE("majority vote needs no estimates") {
  auto w = world(6, 20, 5, 0.8, 1.0);
  ThresholdConfig c;
  c.fixed_count = 3;
  const EstimateTable none;
  const auto out = run_confidence_threshold(w.sim.dataset, w.sim.labelers, none, c, 60,
                                            Method::kMV, w.sim.rng);
  CHECK(out.n_labeled() == 20);
  CHECK_THROWS_AS(run_confidence_threshold(w.sim.dataset, w.sim.labelers, none, c, 60,
                                           Method::kWMV, w.sim.rng),
                  Error);
}

TEST_CASE("uncertainty sampling with budget equal to the dataset size") {
  auto w = world(7, 80, 10, 0.8, 1.0);
  const auto out = run_uncertainty_sampling(w.sim.dataset, w.sim.labelers, w.estimates,
                                            80, Method::kGTX, w.sim.rng);
  CHECK(out.n_labeled() == 80);
  for (auto c : out.ledger.per_example()) CHECK(c == 1);
}

TEST_CASE("first pick after coverage is the least confident example") {
  auto w = world(8, 60, 10, 0.6, 0.95);
  const auto out = run_uncertainty_sampling(w.sim.dataset, w.sim.labelers, w.estimates,
                                            61, Method::kGTX, w.sim.rng);
  REQUIRE(out.event_log.size() == 61);
  double lowest = 1.0;
  std::uint64_t expect = 0;
  for (std::size_t s = 0; s < 60; ++s) {
    if (out.event_log[s].confidence < lowest) {
      lowest = out.event_log[s].confidence;
      expect = s;
    }
  }
  CHECK(to_underlying(out.event_log[60].example_id) == expect);
  CHECK(out.event_log[60].priority == 1.0 - lowest);
}

TEST_CASE("uncertainty sampling stops when every pool is exhausted") {
  auto w = world(9, 5, 3, 0.6, 0.9);
  const auto out = run_uncertainty_sampling(w.sim.dataset, w.sim.labelers, w.estimates,
                                            100, Method::kGTX, w.sim.rng);
  CHECK(out.ledger.spent() == 15);
  for (auto c : out.ledger.per_example()) CHECK(c == 3);
}

TEST_CASE("randomized invariant suite") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> n_dist(1, 50), lab_dist(1, 10), b_dist(0, 200);
  std::uniform_real_distribution<double> lo_dist(0.3, 1.0);
  std::uniform_int_distribution<int> method_dist(0, 3), kind(0, 1);
  for (int run = 0; run < 300; ++run) {
    const std::size_t n = n_dist(gen);
    const std::size_t m = lab_dist(gen);
    const std::uint64_t budget = b_dist(gen);
    const double lo = lo_dist(gen);
    const double hi = std::min(1.0, lo + 0.3);
    auto w = world(gen(), n, m, lo, hi, 15);
    const Method method = kAllMethods[method_dist(gen)];
    oracle::RunContext ctx;
    ctx.n_examples = n;
    ctx.n_labelers = m;
    ctx.budget = budget;
    ctx.method = method;
    ctx.estimates = &w.estimates;
    if (kind(gen) == 0) {
      ThresholdConfig c;
      c.kappa = std::uniform_int_distribution<std::uint32_t>(1, m)(gen);
      c.tau = std::uniform_real_distribution<double>(0.51, 1.0)(gen);
      if (method == Method::kMV || method == Method::kWMV) {
        c.fixed_count = std::uniform_int_distribution<std::uint32_t>(1, c.kappa)(gen);
      }
      ctx.tau = c.tau;
      ctx.cap = c.fixed_count.value_or(c.kappa);
      ctx.fixed_count = c.fixed_count.has_value();
      const auto out = run_confidence_threshold(w.sim.dataset, w.sim.labelers,
                                                w.estimates, c, budget, method, w.sim.rng);
      const auto bad = oracle::check_threshold(out, ctx);
      INFO("threshold run ", run, ": ", joined(bad));
      REQUIRE(bad.empty());
    } else {
      const auto out = run_uncertainty_sampling(w.sim.dataset, w.sim.labelers,
                                                w.estimates, budget, method, w.sim.rng);
      const auto bad = oracle::check_uncertainty(out, ctx);
      INFO("uncertainty run ", run, ": ", joined(bad));
      REQUIRE(bad.empty());
    }
  }
}
