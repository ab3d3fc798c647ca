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

// Synthetic datasets and one-coin labelers.
//
// A trial owns one Rng. Draws happen in a fixed order:
//   1. one draw per dataset example for its true label (example 0 first),
//   2. one draw per labeler for its true accuracy (labeler 0 first),
//   3. assessment draws (see assessment.hpp),
//   4. collection draws interleaved as the strategy requests them: one draw
//      to select a labeler, then one draw for that labeler's response.
// Every primitive below consumes exactly one engine output, so replaying a
// seed reproduces every label in order.

#ifndef GTX_SIMULATION_HPP_
#define GTX_SIMULATION_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gtx/types.hpp"

namespace gtx {

// mt19937_64 (fully specified by the standard) with hand-written
// conversions, so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  // Uniform on [lo, hi]; exactly lo when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // True with probability p; p >= 1 is always true, p <= 0 never.
  bool bernoulli(double p) { return uniform01() < p; }
  // Uniform index in [0, n). Requires n > 0.
  std::size_t index(std::size_t n);

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

// SplitMix64 finalizer applied to master + golden_gamma * (stream + 1).
// Stream k's seed does not depend on how many other streams exist.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

struct SimLabeler {
  LabelerId id{};
  double true_accuracy = 1.0;
};

struct SimExample {
  ExampleId id{};
  LabelValue true_label = LabelValue::zero();
};

struct SimDataset {
  std::vector<SimExample> examples;

  std::size_t size() const { return examples.size(); }
};

struct SimConfig {
  std::uint64_t seed = 0;
  std::size_t n_examples = 1;
  std::size_t n_labelers = 1;
  double accuracy_lo = 0.8;
  double accuracy_hi = 1.0;

  // Throws kConfigError listing every violation.
  void validate() const;
};

struct Simulation {
  SimDataset dataset;
  std::vector<SimLabeler> labelers;
  Rng rng;
};

Simulation init_simulation(const SimConfig& config);

// Draws one balanced true label per example; ids are 0..n-1.
SimDataset make_dataset(std::size_t n_examples, Rng& rng);

std::vector<SimLabeler> make_labelers(std::size_t n_labelers, double lo,
                                      double hi, Rng& rng);

// Throws kAlreadyLabeled if `labeler` is in `already_used`.
LabelRecord elicit_label(const SimLabeler& labeler, const SimExample& example,
                         std::span<const LabelerId> already_used, Rng& rng);

// Uniform among labelers not in `already_used`. Throws kLabelersExhausted.
const SimLabeler& select_labeler(ExampleId example_id,
                                 std::span<const LabelerId> already_used,
                                 std::span<const SimLabeler> labelers, Rng& rng);

}  // namespace gtx

#endif  // GTX_SIMULATION_HPP_
