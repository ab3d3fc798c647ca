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

#include "gtx/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "json.hpp"

namespace gtx {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

template <typename LineFn>
void for_each_line(const fs::path& path, LineFn fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(line_no) + ": " +
                                              e.what());
    }
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(line_no) + ": " + msg);
    };
    if (!obj.is_object()) fail("expected a JSON object");
    fn(obj, fail);
  }
}

template <typename Fail>
std::uint64_t require_unsigned(const json& obj, const char* key, Fail& fail) {
  if (!obj.contains(key)) fail(std::string("missing key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) fail(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

template <typename Fail>
LabelValue require_label(const json& obj, const char* key, Fail& fail) {
  const auto v = require_unsigned(obj, key, fail);
  if (v > 1) fail(std::string("'") + key + "' must be 0 or 1");
  return LabelValue(static_cast<int>(v));
}

void append_label_fields(std::string& s, const LabelRecord& r, std::uint64_t step) {
  s += "{\"example_id\":" + std::to_string(to_underlying(r.example_id)) +
       ",\"labeler_id\":" + std::to_string(to_underlying(r.labeler_id)) +
       ",\"value\":" + std::to_string(r.value.value()) +
       ",\"step\":" + std::to_string(step);
}

std::string ms_fields(const std::optional<MetricSummary>& m) {
  if (!m) return ",";
  return format_number(m->mean) + "," + format_number(m->std_error);
}

std::string lower_method(Method m) {
  std::string s(method_name(m));
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

void write_label_records(const fs::path& path, std::span<const StepRecord> records) {
  std::string s;
  for (const auto& r : records) {
    append_label_fields(s, r.record, r.step);
    s += "}\n";
  }
  write_file(path, s);
}

std::vector<StepRecord> read_label_records(const fs::path& path) {
  std::vector<StepRecord> out;
  for_each_line(path, [&](const json& obj, auto& fail) {
    StepRecord r{{ExampleId{require_unsigned(obj, "example_id", fail)},
                  LabelerId{static_cast<std::uint32_t>(
                      require_unsigned(obj, "labeler_id", fail))},
                  require_label(obj, "value", fail)},
                 require_unsigned(obj, "step", fail)};
    if (!out.empty() && r.step <= out.back().step) {
      fail("step " + std::to_string(r.step) + " does not increase");
    }
    out.push_back(r);
  });
  return out;
}

void write_truth(const fs::path& path, std::span<const AssessmentItem> items) {
  std::string s;
  for (const auto& item : items) {
    s += "{\"example_id\":" + std::to_string(to_underlying(item.example_id)) +
         ",\"value\":" + std::to_string(item.true_label.value()) + "}\n";
  }
  write_file(path, s);
}

std::vector<AssessmentItem> read_truth(const fs::path& path) {
  std::vector<AssessmentItem> out;
  for_each_line(path, [&](const json& obj, auto& fail) {
    out.push_back({ExampleId{require_unsigned(obj, "example_id", fail)},
                   require_label(obj, "value", fail)});
  });
  return out;
}

void write_event_log(const fs::path& path, const CollectionOutcome& outcome) {
  std::string s;
  s.reserve(outcome.event_log.size() * 128);
  for (const auto& e : outcome.event_log) {
    append_label_fields(s, {e.example_id, e.labeler_id, e.value}, e.step);
    s += ",\"priority\":" + format_number(e.priority) +
         ",\"label\":" + std::to_string(e.aggregate_label.value()) +
         ",\"confidence\":" + format_number(e.confidence) +
         ",\"soft_p1\":" + format_number(e.soft_p1) + "}\n";
  }
  write_file(path, s);
}

void write_aggregates_csv(const fs::path& path, const CollectionOutcome& outcome,
                          const GroundTruth& truth) {
  std::string s = "example_id,true_label,label,confidence,soft_p1,n_labels\n";
  for (const auto& a : outcome.aggregates) {
    s += std::to_string(to_underlying(a.example_id)) + "," +
         std::to_string(truth.at(a.example_id).value()) + "," +
         std::to_string(a.label.value()) + "," + format_number(a.confidence) +
         "," + format_number(a.soft_p1) + "," + std::to_string(a.n_labels) + "\n";
  }
  write_file(path, s);
}

void write_summary_csv(const fs::path& path, std::span<const SummaryRow> rows) {
  std::string s =
      "method,avg_k,avg_k_se,best_tau,best_count,n_labeled,n_labeled_se,"
      "error_rate,error_rate_se,mae,mae_se,trials\n";
  for (const auto& r : rows) {
    s += std::string(method_name(r.method)) + "," + ms_fields(r.summary.avg_k) + "," +
         (r.best_tau ? format_number(*r.best_tau) : "") + "," +
         (r.best_count ? std::to_string(*r.best_count) : "") + "," +
         ms_fields(r.summary.n_labeled) + "," + ms_fields(r.summary.error_rate) + "," +
         ms_fields(r.summary.mae) + "," + std::to_string(r.summary.trials) + "\n";
  }
  write_file(path, s);
}

namespace {

std::string cell_param(const SweepCell& c) {
  return c.param == CellParam::kTau ? "tau," + format_number(c.tau)
                                    : "count," + std::to_string(c.count);
}

}  // namespace

void write_sweep_csv(const fs::path& path, std::span<const SweepCell> cells) {
  std::string s =
      "method,param,value,trials,avg_k,avg_k_se,n_labeled,n_labeled_se,"
      "error_rate,error_rate_se,mae,mae_se,best\n";
  for (const auto& c : cells) {
    s += std::string(method_name(c.method)) + "," + cell_param(c) + "," +
         std::to_string(c.summary.trials) + "," + ms_fields(c.summary.avg_k) + "," +
         ms_fields(c.summary.n_labeled) + "," + ms_fields(c.summary.error_rate) +
         "," + ms_fields(c.summary.mae) + "," + (c.best ? "1" : "0") + "\n";
  }
  write_file(path, s);
}

void write_pareto_csv(const fs::path& path, std::span<const SweepCell> cells) {
  std::string s = "method,param,value,avg_k,avg_k_se,error_rate,error_rate_se\n";
  for (const auto& c : cells) {
    s += std::string(method_name(c.method)) + "," + cell_param(c) + "," +
         ms_fields(c.summary.avg_k) + "," + ms_fields(c.summary.error_rate) + "\n";
  }
  write_file(path, s);
}

void write_dynamics_csv(const fs::path& path, std::span<const DynamicsSeries> series) {
  std::string s = "method,labels_collected,error_rate,error_rate_se,mae,mae_se\n";
  for (const auto& d : series) {
    for (std::size_t i = 0; i < d.error_rate.size(); ++i) {
      s += std::string(method_name(d.method)) + "," +
           std::to_string(d.first_step + i) + "," + ms_fields(d.error_rate[i]) +
           "," + ms_fields(d.mae[i]) + "\n";
    }
  }
  write_file(path, s);
}

std::vector<fs::path> write_results(const ResultSet& results, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create output directory " + out_dir.string() + ": " + ec.message());
  }
  std::vector<fs::path> written;
  auto emit = [&](const fs::path& p) { written.push_back(p); };

  write_summary_csv(out_dir / "summary.csv", results.summary);
  emit(out_dir / "summary.csv");
  if (results.sweep) {
    write_sweep_csv(out_dir / "sweep.csv", *results.sweep);
    emit(out_dir / "sweep.csv");
    write_pareto_csv(out_dir / "pareto.csv", *results.sweep);
    emit(out_dir / "pareto.csv");
  }
  if (results.dynamics) {
    write_dynamics_csv(out_dir / "dynamics.csv", *results.dynamics);
    emit(out_dir / "dynamics.csv");
  }
  for (const auto& sample : results.samples) {
    const std::string m = lower_method(sample.method);
    const fs::path agg = out_dir / ("aggregates_" + m + ".csv");
    const fs::path events = out_dir / ("events_" + m + ".jsonl");
    write_aggregates_csv(agg, sample.outcome, sample.truth);
    emit(agg);
    write_event_log(events, sample.outcome);
    emit(events);
  }
  return written;
}

}  // namespace gtx
