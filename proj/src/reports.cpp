/*
 * Copyright 2026 The tsad Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cctype>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "tsad/benchmark.hpp"
#include "tsad/error.hpp"
#include "tsad/key_value.hpp"

namespace tsad {
namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string file_stem(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.')) c = '_';
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string results_csv(const std::vector<ResultRow>& rows, bool with_timing) {
  std::ostringstream os;
  os << "dataset,series,detector,status,auc,best_f1,best_f1_threshold,nmm,n_scored,n_anomalies";
  if (with_timing) os << ",train_seconds,inference_seconds";
  os << ",failure_reason\r\n";
  for (const auto& r : rows) {
    const bool ok = r.status == RowStatus::kOk;
    os << csv_field(r.dataset_id) << ',' << csv_field(r.series_id) << ','
       << csv_field(r.detector) << ',' << status_name(r.status) << ','
       << optional_number(r.report.auc) << ',' << optional_number(r.report.best_f1) << ','
       << optional_number(r.report.best_f1_threshold) << ',' << optional_number(r.report.nmm)
       << ',' << (ok ? std::to_string(r.report.n_scored) : "") << ','
       << (ok ? std::to_string(r.report.n_anomalies) : "");
    if (with_timing) {
      os << ',' << (ok ? format_double(r.report.train_seconds) : "") << ','
         << (ok ? format_double(r.report.inference_seconds) : "");
    }
    os << ',' << csv_field(r.failure_reason) << "\r\n";
  }
  return os.str();
}

std::string summary_json(const BenchmarkResult& result) {
  using json = nlohmann::ordered_json;
  const auto summary = result.summarize();
  json auc = json::object();
  json total = json::object();
  json per_series = json::object();
  for (const auto& s : summary) {
    if (!auc.contains(s.dataset_id)) {
      auc[s.dataset_id] = json::object();
      total[s.dataset_id] = json::object();
      per_series[s.dataset_id] = json::object();
    }
    auc[s.dataset_id][s.detector] = optional_json(s.mean_auc);
    total[s.dataset_id][s.detector] = s.total_seconds;
    per_series[s.dataset_id][s.detector] = s.mean_seconds_per_series;
  }
  std::size_t excluded = 0, failed = 0;
  for (const auto& r : result.rows) {
    excluded += r.status == RowStatus::kExcluded;
    failed += r.status == RowStatus::kFailed;
  }
  json doc;
  doc["rows"] = result.rows.size();
  doc["ok_rows"] = result.ok_count();
  doc["excluded_rows"] = excluded;
  doc["failed_rows"] = failed;
  doc["mean_auc"] = auc;
  doc["seconds"] = {{"total", total}, {"per_series", per_series}};
  return doc.dump(2) + "\n";
}

std::string roc_csv(const RocCurve& curve) {
  std::ostringstream os;
  os << "fpr,tpr,threshold\n";
  for (std::size_t i = 0; i < curve.fpr.size(); ++i) {
    os << format_double(curve.fpr[i]) << ',' << format_double(curve.tpr[i]) << ','
       << format_double(curve.thresholds[i]) << '\n';
  }
  return os.str();
}

void emit_reports(const BenchmarkResult& result, const fs::path& output_dir) {
  std::error_code ec;
  fs::create_directories(output_dir / "roc", ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create " + output_dir.string() + ": " + ec.message());
  write_file(output_dir / "results.csv", results_csv(result.rows));
  write_file(output_dir / "summary.json", summary_json(result));
  for (const auto& r : result.rows) {
    if (r.status != RowStatus::kOk) continue;
    write_file(output_dir / "roc" / (file_stem(r.series_id) + "_" + file_stem(r.detector) + ".csv"),
               roc_csv(r.roc));
  }
}

}  // namespace tsad
