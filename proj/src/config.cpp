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

#include "gtx/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gtx {

using nlohmann::json;

namespace {

constexpr std::size_t kUncertaintyExamples = 5000;
constexpr std::size_t kUncertaintyTrials = 10;
constexpr std::uint64_t kUncertaintyLabelsPerExample = 3;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "strategy",   "method",          "methods",           "seed",
      "trials",     "budget",          "tau_grid",          "count_grid",
      "kappa",      "accuracy_interval", "n_examples",      "n_labelers",
      "assessment_size", "oracle_accuracy"};
  return keys;
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "threshold") return Strategy::kThreshold;
  if (s == "uncertainty") return Strategy::kUncertainty;
  return std::nullopt;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Collects schema problems so they can all be reported at once.
class FieldReader {
 public:
  explicit FieldReader(const json& obj) : obj_(obj) {}

  bool has(const char* key) const { return obj_.contains(key); }

  template <typename T>
  std::optional<T> unsigned_int(const char* key) {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number_unsigned()) {
      problem(key, "must be a non-negative integer");
      return std::nullopt;
    }
    return v.get<T>();
  }

  std::optional<double> number(const json& v, const std::string& where) {
    if (!v.is_number()) {
      problem(where, "must be a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<bool> boolean(const char* key) {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) {
      problem(key, "must be true or false");
      return std::nullopt;
    }
    return v.get<bool>();
  }

  const json* array(const char* key) {
    if (!has(key)) return nullptr;
    const json& v = obj_.at(key);
    if (!v.is_array()) {
      problem(key, "must be an array");
      return nullptr;
    }
    return &v;
  }

  const json* string(const char* key) {
    if (!has(key)) return nullptr;
    const json& v = obj_.at(key);
    if (!v.is_string()) {
      problem(key, "must be a string");
      return nullptr;
    }
    return &v;
  }

  void problem(const std::string& field, const std::string& message) {
    problems_.push_back("field '" + field + "': " + message);
  }

  std::vector<std::string>& problems() { return problems_; }

 private:
  const json& obj_;
  std::vector<std::string> problems_;
};

[[noreturn]] void throw_problems(std::string_view source,
                                 const std::vector<std::string>& problems) {
  std::string msg = std::string(source) + ": invalid config:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw Error(ErrorCode::kConfigError, msg);
}

std::vector<std::string> violations(const ExperimentConfig& c) {
  std::vector<std::string> out;
  auto fmt = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  if (c.methods.empty()) out.emplace_back("methods: at least one method is required");
  if (c.trials < 1) out.emplace_back("trials: must be >= 1");
  if (c.n_examples < 1) out.emplace_back("n_examples: must be >= 1");
  if (c.n_labelers < 1) out.emplace_back("n_labelers: must be >= 1");
  if (c.assessment_size < 1) out.emplace_back("assessment_size: must be >= 1");
  if (c.kappa < 1) out.emplace_back("kappa: must be >= 1");
  if (c.kappa > c.n_labelers) {
    out.push_back("kappa: " + std::to_string(c.kappa) +
                  " exceeds n_labelers " + std::to_string(c.n_labelers));
  }
  if (!(c.accuracy_lo >= 0.0 && c.accuracy_hi <= 1.0 &&
        c.accuracy_lo <= c.accuracy_hi)) {
    out.push_back("accuracy_interval: [" + fmt(c.accuracy_lo) + ", " +
                  fmt(c.accuracy_hi) + "] must satisfy 0 <= a <= b <= 1");
  }
  if (c.strategy == Strategy::kThreshold) {
    if (c.tau_grid.empty()) out.emplace_back("tau_grid: must not be empty");
    if (c.count_grid.empty()) out.emplace_back("count_grid: must not be empty");
  }
  for (double tau : c.tau_grid) {
    if (!(tau > 0.5 && tau <= 1.0)) {
      out.push_back("tau_grid: tau " + fmt(tau) + " must lie in (0.5, 1]");
    }
  }
  for (auto count : c.count_grid) {
    if (count < 1 || count > c.kappa) {
      out.push_back("count_grid: count " + std::to_string(count) +
                    " must lie in [1, kappa]");
    }
  }
  return out;
}

}  // namespace

ExperimentConfig default_config(Strategy strategy) {
  ExperimentConfig c;
  c.strategy = strategy;
  if (strategy == Strategy::kUncertainty) {
    c.trials = kUncertaintyTrials;
    c.n_examples = kUncertaintyExamples;
    c.budget = kUncertaintyLabelsPerExample * kUncertaintyExamples;
  }
  return c;
}

void validate(const ExperimentConfig& config) {
  const auto problems = violations(config);
  if (!problems.empty()) throw_problems("config", problems);
}

ExperimentConfig parse_config(std::string_view text, std::string_view source,
                              Strategy default_strategy) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParseError, std::string(source) + ":" +
                                            std::to_string(line) + ":" +
                                            std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kParseError,
                std::string(source) + ": config must be a JSON object");
  }

  FieldReader in(root);
  for (const auto& item : root.items()) {
    if (!known_keys().contains(item.key())) in.problem(item.key(), "unknown key");
  }

  Strategy strategy = default_strategy;
  if (const json* s = in.string("strategy")) {
    if (auto parsed = parse_strategy(s->get<std::string>())) {
      strategy = *parsed;
    } else {
      in.problem("strategy", "must be 'threshold' or 'uncertainty'");
    }
  }
  ExperimentConfig c = default_config(strategy);

  if (in.has("method") && in.has("methods")) {
    in.problem("method", "give either 'method' or 'methods', not both");
  }
  auto read_method = [&](const json& v, const std::string& where) {
    if (!v.is_string()) {
      in.problem(where, "must be a method name");
      return;
    }
    if (auto m = parse_method(v.get<std::string>())) {
      if (std::find(c.methods.begin(), c.methods.end(), *m) == c.methods.end()) {
        c.methods.push_back(*m);
      }
    } else {
      in.problem(where, "unknown method '" + v.get<std::string>() +
                            "' (expected mv, wmv, sv or gtx)");
    }
  };
  if (in.has("method")) {
    c.methods.clear();
    read_method(root.at("method"), "method");
  } else if (const json* arr = in.array("methods")) {
    c.methods.clear();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      read_method((*arr)[i], "methods[" + std::to_string(i) + "]");
    }
  }

  if (auto v = in.unsigned_int<std::uint64_t>("seed")) c.seed = *v;
  if (auto v = in.unsigned_int<std::size_t>("trials")) c.trials = *v;
  if (auto v = in.unsigned_int<std::uint32_t>("kappa")) c.kappa = *v;
  if (auto v = in.unsigned_int<std::size_t>("n_labelers")) c.n_labelers = *v;
  if (auto v = in.unsigned_int<std::size_t>("assessment_size")) c.assessment_size = *v;
  if (auto v = in.boolean("oracle_accuracy")) c.oracle_accuracy = *v;

  const auto budget = in.unsigned_int<std::uint64_t>("budget");
  const auto n_examples = in.unsigned_int<std::size_t>("n_examples");
  if (strategy == Strategy::kThreshold) {
    if (budget) c.budget = *budget;
    // Enough examples that the budget, not the dataset, is the limit.
    c.n_examples = n_examples ? *n_examples : std::max<std::uint64_t>(c.budget, 1);
  } else {
    if (n_examples) c.n_examples = *n_examples;
    c.budget = budget ? *budget : kUncertaintyLabelsPerExample * c.n_examples;
  }

  if (const json* arr = in.array("tau_grid")) {
    c.tau_grid.clear();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      if (auto t = in.number((*arr)[i], "tau_grid[" + std::to_string(i) + "]")) {
        c.tau_grid.push_back(*t);
      }
    }
  }
  if (const json* arr = in.array("count_grid")) {
    c.count_grid.clear();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const json& v = (*arr)[i];
      if (!v.is_number_unsigned()) {
        in.problem("count_grid[" + std::to_string(i) + "]",
                   "must be a positive integer");
      } else {
        c.count_grid.push_back(v.get<std::uint32_t>());
      }
    }
  }
  if (const json* arr = in.array("accuracy_interval")) {
    if (arr->size() != 2) {
      in.problem("accuracy_interval", "must be [a, b]");
    } else {
      auto lo = in.number((*arr)[0], "accuracy_interval[0]");
      auto hi = in.number((*arr)[1], "accuracy_interval[1]");
      if (lo && hi) {
        c.accuracy_lo = *lo;
        c.accuracy_hi = *hi;
      }
    }
  }

  auto& problems = in.problems();
  for (auto& v : violations(c)) problems.push_back(std::move(v));
  if (!problems.empty()) throw_problems(source, problems);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             Strategy default_strategy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string(), default_strategy);
}

std::string serialize_config(const ExperimentConfig& c) {
  json out = json::object();
  out["strategy"] = std::string(strategy_name(c.strategy));
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(lowercase(method_name(m)));
  out["methods"] = methods;
  out["seed"] = c.seed;
  out["trials"] = c.trials;
  out["budget"] = c.budget;
  out["tau_grid"] = c.tau_grid;
  out["count_grid"] = c.count_grid;
  out["kappa"] = c.kappa;
  out["accuracy_interval"] = json::array({c.accuracy_lo, c.accuracy_hi});
  out["n_examples"] = c.n_examples;
  out["n_labelers"] = c.n_labelers;
  out["assessment_size"] = c.assessment_size;
  out["oracle_accuracy"] = c.oracle_accuracy;
  return out.dump(2) + "\n";
}

}  // namespace gtx
