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

#include "gtx/simulation.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace gtx {

std::size_t Rng::index(std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  return std::min(i, n - 1);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void SimConfig::validate() const {
  std::vector<std::string> problems;
  if (n_examples == 0) problems.emplace_back("n_examples must be > 0");
  if (n_labelers == 0) problems.emplace_back("n_labelers must be > 0");
  if (!(accuracy_lo >= 0.0 && accuracy_hi <= 1.0 && accuracy_lo <= accuracy_hi)) {
    std::ostringstream os;
    os << "accuracy interval [" << accuracy_lo << ", " << accuracy_hi
       << "] must satisfy 0 <= a <= b <= 1";
    problems.push_back(os.str());
  }
  if (problems.empty()) return;
  std::string msg = "invalid simulation config:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw Error(ErrorCode::kConfigError, msg);
}

SimDataset make_dataset(std::size_t n_examples, Rng& rng) {
  SimDataset d;
  d.examples.reserve(n_examples);
  for (std::size_t i = 0; i < n_examples; ++i) {
    d.examples.push_back({ExampleId{i}, LabelValue(rng.bernoulli(0.5) ? 1 : 0)});
  }
  return d;
}

std::vector<SimLabeler> make_labelers(std::size_t n_labelers, double lo,
                                      double hi, Rng& rng) {
  std::vector<SimLabeler> out;
  out.reserve(n_labelers);
  for (std::size_t j = 0; j < n_labelers; ++j) {
    out.push_back({LabelerId{static_cast<std::uint32_t>(j)}, rng.uniform(lo, hi)});
  }
  return out;
}

Simulation init_simulation(const SimConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SimDataset dataset = make_dataset(config.n_examples, rng);
  auto labelers =
      make_labelers(config.n_labelers, config.accuracy_lo, config.accuracy_hi, rng);
  return Simulation{std::move(dataset), std::move(labelers), std::move(rng)};
}

namespace {

bool contains(std::span<const LabelerId> ids, LabelerId id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

}  // namespace

LabelRecord elicit_label(const SimLabeler& labeler, const SimExample& example,
                         std::span<const LabelerId> already_used, Rng& rng) {
  if (contains(already_used, labeler.id)) {
    throw Error(ErrorCode::kAlreadyLabeled,
                "labeler " + std::to_string(to_underlying(labeler.id)) +
                    " already labeled example " +
                    std::to_string(to_underlying(example.id)));
  }
  const bool correct = rng.bernoulli(labeler.true_accuracy);
  return {example.id, labeler.id,
          correct ? example.true_label : example.true_label.flipped()};
}

const SimLabeler& select_labeler(ExampleId example_id,
                                 std::span<const LabelerId> already_used,
                                 std::span<const SimLabeler> labelers, Rng& rng) {
  std::size_t available = 0;
  for (const auto& l : labelers) {
    if (!contains(already_used, l.id)) ++available;
  }
  if (available == 0) {
    throw Error(ErrorCode::kLabelersExhausted,
                "every labeler has already labeled example " +
                    std::to_string(to_underlying(example_id)));
  }
  std::size_t pick = rng.index(available);
  for (const auto& l : labelers) {
    if (contains(already_used, l.id)) continue;
    if (pick == 0) return l;
    --pick;
  }
  return labelers.back();  // unreachable
}

}  // namespace gtx
