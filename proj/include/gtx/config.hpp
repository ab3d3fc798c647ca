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

// Declarative experiment configuration, stored as a JSON object.
//
//   {
//     "strategy": "threshold",            // or "uncertainty"
//     "methods": ["mv", "wmv", "sv", "gtx"],  // or "method": "gtx"
//     "seed": 42,
//     "trials": 100,                      // 10 for uncertainty
//     "budget": 15000,                    // 3 * n_examples for uncertainty
//     "tau_grid": [0.85, 0.87, 0.89, 0.91, 0.93, 0.95, 0.96, 0.97, 0.99],
//     "count_grid": [1, 2, 3, 4, 5],
//     "kappa": 5,
//     "accuracy_interval": [0.8, 1.0],
//     "n_examples": 15000,                // = budget for threshold, 5000 for
//                                         // uncertainty
//     "n_labelers": 10,
//     "assessment_size": 100,
//     "oracle_accuracy": false
//   }
//
// Every key is optional. Unknown keys are rejected, and validation reports
// every violation at once.

#ifndef GTX_CONFIG_HPP_
#define GTX_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtx/aggregators.hpp"
#include "gtx/strategies.hpp"

namespace gtx {

struct ExperimentConfig {
  Strategy strategy = Strategy::kThreshold;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  std::uint64_t budget = 15000;
  std::vector<double> tau_grid{0.85, 0.87, 0.89, 0.91, 0.93,
                               0.95, 0.96, 0.97, 0.99};
  std::vector<std::uint32_t> count_grid{1, 2, 3, 4, 5};
  std::uint32_t kappa = 5;
  double accuracy_lo = 0.8;
  double accuracy_hi = 1.0;
  std::size_t n_examples = 15000;
  std::size_t n_labelers = 10;
  std::size_t assessment_size = 100;
  bool oracle_accuracy = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Defaults for a strategy with nothing overridden.
ExperimentConfig default_config(Strategy strategy);

// Throws kConfigError listing every violation.
void validate(const ExperimentConfig& config);

// `default_strategy` applies when the text has no "strategy" key. Throws
// kParseError (with line and column) for malformed JSON and kConfigError
// for schema or validation problems.
ExperimentConfig parse_config(std::string_view text, std::string_view source,
                              Strategy default_strategy = Strategy::kThreshold);

ExperimentConfig load_config(const std::filesystem::path& path,
                             Strategy default_strategy = Strategy::kThreshold);

// Every key written out, so that parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace gtx

#endif  // GTX_CONFIG_HPP_
