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


#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gtx/config.hpp"
#include "gtx/io.hpp"

using namespace gtx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gtx_test_io";
  fs::create_directories(dir);
  return dir / name;
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidValue;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_optional(std::nullopt) == "");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("label record files round-trip") {
  std::vector<StepRecord> recs;
  for (std::uint64_t i = 0; i < 50; ++i) {
    recs.push_back({{ExampleId{i * 7}, LabelerId{static_cast<std::uint32_t>(i % 4)},
                     LabelValue(static_cast<int>(i % 2))},
                    i + 1});
  }
  const auto p = scratch("labels.jsonl");
  write_label_records(p, recs);
  CHECK(read_label_records(p) == recs);
  write_label_records(p, {});
  CHECK(read_label_records(p).empty());
}

TEST_CASE("label record parse errors name the line") {
  const auto p = scratch("bad.jsonl");
  put(p, "{\"example_id\":1,\"labeler_id\":0,\"value\":1,\"step\":1}\n{oops\n");
  try {
    read_label_records(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  put(p, "{\"example_id\":1,\"labeler_id\":0,\"value\":1,\"step\":2}\n"
         "{\"example_id\":2,\"labeler_id\":0,\"value\":1,\"step\":2}\n");
  CHECK(code_of([&] { read_label_records(p); }) == ErrorCode::kParseError);
  put(p, "{\"example_id\":1,\"labeler_id\":0,\"value\":3,\"step\":1}\n");
  CHECK(code_of([&] { read_label_records(p); }) == ErrorCode::kParseError);
  put(p, "{\"example_id\":1,\"value\":1,\"step\":1}\n");
  CHECK(code_of([&] { read_label_records(p); }) == ErrorCode::kParseError);
  CHECK(code_of([&] { read_label_records(scratch("missing.jsonl")); }) ==
        ErrorCode::kIoError);
}

TEST_CASE("blank lines and extra keys are tolerated") {
  const auto p = scratch("extra.jsonl");
  put(p, "\n{\"example_id\":1,\"labeler_id\":0,\"value\":1,\"step\":1,\"confidence\":0.9}\n\n");
  const auto recs = read_label_records(p);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].record.example_id == ExampleId{1});
}

TEST_CASE("truth files round-trip") {
  const std::vector<AssessmentItem> items{{ExampleId{3}, LabelValue::one()},
                                          {ExampleId{9}, LabelValue::zero()}};
  const auto p = scratch("truth.jsonl");
  write_truth(p, items);
  const auto back = read_truth(p);
  REQUIRE(back.size() == 2);
  CHECK(back[1].example_id == ExampleId{9});
  CHECK(back[1].true_label == LabelValue::zero());
}

TEST_CASE("empty results give header-only tables") {
  const auto dir = scratch("empty_results");
  fs::remove_all(dir);
  ResultSet r;
  r.sweep.emplace();
  r.dynamics.emplace();
  CollectionOutcome empty;
  r.samples.push_back({Method::kGTX, empty, GroundTruth{}});
  const auto paths = write_results(r, dir);
  CHECK(paths.size() == 6);
  CHECK(slurp(dir / "summary.csv") ==
        "method,avg_k,avg_k_se,best_tau,best_count,n_labeled,n_labeled_se,"
        "error_rate,error_rate_se,mae,mae_se,trials\n");
  CHECK(slurp(dir / "dynamics.csv") ==
        "method,labels_collected,error_rate,error_rate_se,mae,mae_se\n");
  CHECK(slurp(dir / "aggregates_gtx.csv") ==
        "example_id,true_label,label,confidence,soft_p1,n_labels\n");
  CHECK(slurp(dir / "events_gtx.jsonl").empty());
  for (const auto& p : paths) CHECK(fs::exists(p));
}

TEST_CASE("minimal config gets the defaults") {
  const auto c = parse_config(R"({"strategy": "threshold", "method": "gtx"})", "t");
  CHECK(c.budget == 15000);
  CHECK(c.kappa == 5);
  CHECK(c.n_labelers == 10);
  CHECK(c.trials == 100);
  CHECK(c.n_examples == 15000);
  CHECK(c.methods == std::vector<Method>{Method::kGTX});
  CHECK(c.tau_grid.front() == 0.85);
  CHECK(c.tau_grid.back() == 0.99);
  CHECK(c.accuracy_lo == 0.8);
  CHECK_FALSE(c.oracle_accuracy);

  const auto u = parse_config(R"({"strategy": "uncertainty", "n_examples": 400})", "u");
  CHECK(u.budget == 1200);
  CHECK(u.trials == 10);
}

TEST_CASE("config validation reports every problem") {
  CHECK(code_of([] { parse_config(R"({"kappa": 7, "n_labelers": 5})", "t"); }) ==
        ErrorCode::kConfigError);
  CHECK(code_of([] { parse_config(R"({"tau_grid": [0.5]})", "t"); }) ==
        ErrorCode::kConfigError);
  try {
    parse_config(R"({"kappa": 7, "n_labelers": 5, "tau_grid": [0.5], "colour": 1})", "t");
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("kappa") != std::string::npos);
    CHECK(msg.find("tau") != std::string::npos);
    CHECK(msg.find("colour") != std::string::npos);
  }
  CHECK(code_of([] { parse_config(R"({"method": "em"})", "t"); }) ==
        ErrorCode::kConfigError);
  CHECK(code_of([] { parse_config(R"({"seed": -1})", "t"); }) == ErrorCode::kConfigError);
  CHECK(code_of([] { parse_config(R"({"accuracy_interval": [0.9, 0.8]})", "t"); }) ==
        ErrorCode::kConfigError);
}

TEST_CASE("malformed config reports line and column") {
  try {
    parse_config("{\n  \"seed\": 1,\n  \"trials\": ]\n}", "bad.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).rfind("bad.json:3:", 0) == 0);
  }
  CHECK(code_of([] { parse_config("[1, 2]", "x"); }) == ErrorCode::kParseError);
}

TEST_CASE("config serialization is idempotent") {
  const char* inputs[] = {
      R"({})",
      R"({"strategy": "uncertainty", "methods": ["gtx", "mv"], "seed": 7})",
      R"({"budget": 300, "tau_grid": [0.9, 0.95], "count_grid": [1, 2],
          "accuracy_interval": [0.6, 0.9], "oracle_accuracy": true})",
  };
  for (const char* text : inputs) {
    const auto c = parse_config(text, "x");
    const auto once = serialize_config(c);
    const auto again = parse_config(once, "x");
    CHECK(again == c);
    CHECK(serialize_config(again) == once);
  }
}

TEST_CASE("load_config reads files") {
  const auto p = scratch("c.json");
  put(p, R"({"method": "sv", "trials": 3})");
  const auto c = load_config(p);
  CHECK(c.trials == 3);
  CHECK(code_of([&] { load_config(scratch("nope.json")); }) == ErrorCode::kIoError);
}
