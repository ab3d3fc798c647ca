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


#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gtx/simulation.hpp"

using namespace gtx;

TEST_CASE("rng conversions") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(rng.index(7) < 7);
  }
  CHECK(rng.uniform(0.8, 0.8) == 0.8);
  CHECK(rng.bernoulli(1.0));
  CHECK_FALSE(rng.bernoulli(0.0));
  CHECK(rng.draws() == 20003);
}

TEST_CASE("split seeds are distinct and stable") {
  CHECK(split_seed(42, 0) == split_seed(42, 0));
  CHECK(split_seed(42, 0) != split_seed(42, 1));
  CHECK(split_seed(42, 0) != split_seed(43, 0));
}

TEST_CASE("same seed, same simulation") {
  SimConfig c;
  c.seed = 42;
  c.n_examples = 200;
  c.n_labelers = 10;
  auto a = init_simulation(c);
  auto b = init_simulation(c);
  REQUIRE(a.dataset.size() == 200);
  for (std::size_t i = 0; i < 200; ++i) {
    CHECK(a.dataset.examples[i].id == ExampleId{i});
    CHECK(a.dataset.examples[i].true_label == b.dataset.examples[i].true_label);
  }
  for (std::size_t j = 0; j < 10; ++j) {
    CHECK(a.labelers[j].id == LabelerId{static_cast<std::uint32_t>(j)});
    CHECK(a.labelers[j].true_accuracy == b.labelers[j].true_accuracy);
    CHECK(a.labelers[j].true_accuracy >= 0.8);
    CHECK(a.labelers[j].true_accuracy <= 1.0);
  }
  CHECK(a.rng.draws() == 210);
  CHECK(a.rng.next_u64() == b.rng.next_u64());
}

TEST_CASE("degenerate interval and balanced classes") {
  SimConfig c;
  c.seed = 5;
  c.n_examples = 20000;
  c.n_labelers = 4;
  c.accuracy_lo = c.accuracy_hi = 0.8;
  const auto sim = init_simulation(c);
  for (const auto& l : sim.labelers) CHECK(l.true_accuracy == 0.8);
  std::size_t ones = 0;
  for (const auto& e : sim.dataset.examples) ones += e.true_label.value();
  CHECK(std::abs(ones / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("labeler accuracy mean") {
  SimConfig c;
  c.seed = 6;
  c.n_examples = 1;
  c.n_labelers = 10000;
  const auto sim = init_simulation(c);
  double sum = 0.0;
  for (const auto& l : sim.labelers) sum += l.true_accuracy;
  CHECK(sum / 10000.0 >= 0.895);
  CHECK(sum / 10000.0 <= 0.905);
}

TEST_CASE("config validation") {
  SimConfig c;
  c.accuracy_lo = 0.9;
  c.accuracy_hi = 0.8;
  CHECK_THROWS_AS(init_simulation(c), Error);
  c.accuracy_lo = -0.1;
  c.accuracy_hi = 0.5;
  CHECK_THROWS_AS(c.validate(), Error);
  c = SimConfig{};
  c.n_labelers = 0;
  try {
    c.validate();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
  }
}

TEST_CASE("elicitation") {
  Rng rng(3);
  const SimExample ex{ExampleId{0}, LabelValue::one()};
  const SimLabeler perfect{LabelerId{0}, 1.0};
  const SimLabeler adversary{LabelerId{1}, 0.0};
  for (int i = 0; i < 100; ++i) {
    CHECK(elicit_label(perfect, ex, {}, rng).value == LabelValue::one());
    CHECK(elicit_label(adversary, ex, {}, rng).value == LabelValue::zero());
  }
  CHECK(rng.draws() == 200);
  const auto r = elicit_label(perfect, ex, {}, rng);
  CHECK(r.example_id == ex.id);
  CHECK(r.labeler_id == perfect.id);

  const SimLabeler noisy{LabelerId{2}, 0.8};
  std::size_t right = 0;
  for (int i = 0; i < 100000; ++i) right += elicit_label(noisy, ex, {}, rng).value == ex.true_label;
  CHECK(right / 100000.0 >= 0.795);
  CHECK(right / 100000.0 <= 0.805);

  const std::vector<LabelerId> used{LabelerId{2}};
  try {
    elicit_label(noisy, ex, used, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAlreadyLabeled);
  }
}

TEST_CASE("selection without replacement") {
  Rng rng(4);
  std::vector<SimLabeler> one{{LabelerId{5}, 0.9}};
  CHECK(select_labeler(ExampleId{0}, {}, one, rng).id == LabelerId{5});

  std::vector<SimLabeler> ten;
  std::vector<LabelerId> all;
  for (std::uint32_t j = 0; j < 10; ++j) {
    ten.push_back({LabelerId{j}, 0.9});
    all.push_back(LabelerId{j});
  }
  try {
    select_labeler(ExampleId{0}, all, ten, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLabelersExhausted);
  }

  std::vector<std::size_t> hits(10, 0);
  const auto before = rng.draws();
  for (int i = 0; i < 100000; ++i) {
    ++hits[to_underlying(select_labeler(ExampleId{0}, {}, ten, rng).id)];
  }
  CHECK(rng.draws() - before == 100000);
  for (auto h : hits) {
    CHECK(h / 100000.0 >= 0.095);
    CHECK(h / 100000.0 <= 0.105);
  }

  // Drawing until exhaustion yields a permutation.
  std::vector<LabelerId> used;
  while (used.size() < 10) used.push_back(select_labeler(ExampleId{0}, used, ten, rng).id);
  std::sort(used.begin(), used.end());
  CHECK(used == all);
}
