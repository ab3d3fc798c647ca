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

// Shared vocabulary types: identifiers, binary labels, label records and the
// library-wide error type.

#ifndef GTX_TYPES_HPP_
#define GTX_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gtx {

enum class ExampleId : std::uint64_t {};
enum class LabelerId : std::uint32_t {};

constexpr std::uint64_t to_underlying(ExampleId id) {
  return static_cast<std::uint64_t>(id);
}
constexpr std::uint32_t to_underlying(LabelerId id) {
  return static_cast<std::uint32_t>(id);
}

enum class ErrorCode {
  kInvalidValue,
  kMissingEstimate,
  kDuplicateLabeler,
  kEmptyLabelSet,
  kEmptyAssessment,
  kIncompleteAssessment,
  kAlreadyLabeled,
  kLabelersExhausted,
  kConfigError,
  kParseError,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A binary class label. Construction from anything other than 0 or 1 throws.
class LabelValue {
 public:
  constexpr explicit LabelValue(int value) : value_(check(value)) {}

  static constexpr LabelValue zero() { return LabelValue(0); }
  static constexpr LabelValue one() { return LabelValue(1); }

  constexpr int value() const { return value_; }
  constexpr std::size_t index() const { return value_; }
  constexpr LabelValue flipped() const { return LabelValue(1 - value_); }

  friend constexpr bool operator==(LabelValue, LabelValue) = default;

 private:
  static constexpr std::uint8_t check(int value) {
    if (value != 0 && value != 1) {
      throw Error(ErrorCode::kInvalidValue,
                  "label value must be 0 or 1, got " + std::to_string(value));
    }
    return static_cast<std::uint8_t>(value);
  }

  std::uint8_t value_;
};

struct LabelRecord {
  ExampleId example_id;
  LabelerId labeler_id;
  LabelValue value;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

}  // namespace gtx

#endif  // GTX_TYPES_HPP_
