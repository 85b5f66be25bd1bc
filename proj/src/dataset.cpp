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

#include "tsad/dataset.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tsad/error.hpp"
#include "tsad/key_value.hpp"

namespace tsad {
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> csv_fields(const std::string& line) {
  auto fields = split(line, ',');
  for (auto& f : fields) {
    f = trim(f);
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
  }
  return fields;
}

std::optional<std::size_t> column_index(const std::vector<std::string>& header,
                                        std::initializer_list<const char*> names) {
  for (const char* name : names) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  return std::nullopt;
}

Label parse_label(const std::string& field, std::size_t row) {
  double v = 0.0;
  try {
    v = parse_double(field, "label");
  } catch (const Error&) {
    fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": bad label '" + field + "'");
  }
  if (v != 0.0 && v != 1.0) {
    fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": label must be 0 or 1");
  }
  return static_cast<Label>(v);
}

// Orders "real_2.csv" before "real_10.csv".
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      unsigned long long x = std::stoull(a.substr(i, i2 - i));
      unsigned long long y = std::stoull(b.substr(j, j2 - j));
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

}  // namespace

TimeSeries parse_yahoo_csv(const std::string& text, const std::string& series_id) {
  auto lines = lines_of(text);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorCode::kParseError, "row 1: missing header");
  const auto header = csv_fields(lines[0]);
  auto value_col = column_index(header, {"value"});
  if (!value_col) fail(ErrorCode::kMissingColumn, "value");
  auto label_col = column_index(header, {"is_anomaly", "anomaly"});
  if (!label_col) fail(ErrorCode::kMissingColumn, "is_anomaly");
  auto change_col = column_index(header, {"changepoint"});

  std::vector<double> values;
  std::vector<Label> labels;
  values.reserve(lines.size());
  labels.reserve(lines.size());
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row = r + 1;  // 1-based file line
    if (trim(lines[r]).empty()) continue;
    auto fields = csv_fields(lines[r]);
    const std::size_t need = std::max({*value_col, *label_col, change_col.value_or(0)}) + 1;
    if (fields.size() < need) {
      fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": expected " +
                                       std::to_string(need) + " fields");
    }
    double v = 0.0;
    try {
      v = parse_double(fields[*value_col], "value");
    } catch (const Error&) {
      fail(ErrorCode::kParseError,
           "row " + std::to_string(row) + ": bad value '" + fields[*value_col] + "'");
    }
    if (!std::isfinite(v)) {
      fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": non-finite value");
    }
    Label l = parse_label(fields[*label_col], row);
    if (change_col) l = static_cast<Label>(l | parse_label(fields[*change_col], row));
    values.push_back(v);
    labels.push_back(l);
  }
  if (values.empty()) fail(ErrorCode::kParseError, "row 2: no data rows");
  return TimeSeries(std::move(values), std::move(labels), series_id);
}

TimeSeries load_yahoo_csv(const fs::path& path) {
  return parse_yahoo_csv(read_file(path), path.stem().string());
}

std::int64_t parse_timestamp(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  std::string t = trim(text);
  if (std::sscanf(t.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s) != 6 &&
      std::sscanf(t.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s) != 6) {
    fail(ErrorCode::kParseError, "bad timestamp '" + t + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) {
    fail(ErrorCode::kParseError, "bad timestamp '" + t + "'");
  }
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + s;
}

TimeSeries parse_nab(const std::string& data_csv, const std::string& label_json,
                     const std::string& label_key) {
  auto lines = lines_of(data_csv);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorCode::kParseError, "row 1: missing header");
  const auto header = csv_fields(lines[0]);
  auto ts_col = column_index(header, {"timestamp"});
  if (!ts_col) fail(ErrorCode::kMissingColumn, "timestamp");
  auto value_col = column_index(header, {"value"});
  if (!value_col) fail(ErrorCode::kMissingColumn, "value");

  std::vector<std::int64_t> stamps;
  std::vector<double> values;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row = r + 1;
    if (trim(lines[r]).empty()) continue;
    auto fields = csv_fields(lines[r]);
    if (fields.size() <= std::max(*ts_col, *value_col)) {
      fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": too few fields");
    }
    try {
      stamps.push_back(parse_timestamp(fields[*ts_col]));
      values.push_back(parse_double(fields[*value_col], "value"));
    } catch (const Error& e) {
      fail(ErrorCode::kParseError, "row " + std::to_string(row) + ": " + e.what());
    }
  }
  if (values.empty()) fail(ErrorCode::kParseError, "row 2: no data rows");

  nlohmann::json windows;
  try {
    windows = nlohmann::json::parse(label_json);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("label file: ") + e.what());
  }
  if (!windows.is_object() || !windows.contains(label_key)) {
    fail(ErrorCode::kLabelFileMissingEntry, label_key);
  }
  std::vector<Label> labels(values.size(), 0);
  for (const auto& w : windows[label_key]) {
    if (!w.is_array() || w.size() != 2 || !w[0].is_string() || !w[1].is_string()) {
      fail(ErrorCode::kParseError, "label window for " + label_key + " is not a [start, end] pair");
    }
    const auto start = parse_timestamp(w[0].get<std::string>());
    const auto end = parse_timestamp(w[1].get<std::string>());
    for (std::size_t i = 0; i < stamps.size(); ++i) {
      if (stamps[i] >= start && stamps[i] <= end) labels[i] = 1;
    }
  }
  std::string id = label_key;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (auto dot = id.find_last_of('.'); dot != std::string::npos) id = id.substr(0, dot);
  return TimeSeries(std::move(values), std::move(labels), id);
}

TimeSeries load_nab_csv(const fs::path& data_path, const fs::path& label_windows_path,
                        const std::string& label_key) {
  std::string key = label_key;
  if (key.empty()) {
    key = data_path.parent_path().filename().string() + "/" + data_path.filename().string();
  }
  return parse_nab(read_file(data_path), read_file(label_windows_path), key);
}

std::string format_series_csv(const TimeSeries& series) {
  std::string out = "timestamp,value,is_anomaly\n";
  auto labels = series.labels();
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(series[i]);
    out += ',';
    out += (labels.empty() ? '0' : static_cast<char>('0' + labels[i]));
    out += '\n';
  }
  return out;
}

void write_series_csv(const TimeSeries& series, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  out << format_series_csv(series);
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

DatasetManifest load_manifest(const fs::path& path) {
  DatasetManifest m;
  m.dataset_id = path.stem().string();
  const fs::path base = path.parent_path();
  std::set<std::string> seen;
  for (const auto& raw : lines_of(read_file(path))) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    fs::path p(line);
    if (p.is_relative()) p = base / p;
    std::string id = p.stem().string();
    if (!seen.insert(id).second) {
      fail(ErrorCode::kInvalidArgument, "duplicate series id '" + id + "' in manifest");
    }
    m.series.push_back({id, p});
  }
  return m;
}

namespace {

std::optional<fs::path> first_existing(const std::vector<fs::path>& candidates) {
  for (const auto& c : candidates) {
    std::error_code ec;
    if (fs::exists(c, ec)) return c;
  }
  return std::nullopt;
}

}  // namespace

DatasetManifest resolve_dataset(const std::string& dataset_id, const fs::path& root) {
  static const std::map<std::string, std::pair<std::string, std::size_t>> kYahoo = {
      {"UD1", {"A1Benchmark", 67}},
      {"UD2", {"A2Benchmark", 100}},
      {"UD3", {"A3Benchmark", 100}},
      {"UD4", {"A4Benchmark", 100}},
  };
  DatasetManifest m;
  m.dataset_id = dataset_id;
  if (auto it = kYahoo.find(dataset_id); it != kYahoo.end()) {
    const auto& sub = it->second.first;
    auto dir = first_existing({root / sub, root / "yahoo" / sub,
                               root / "ydata-labeled-time-series-anomalies-v1_0" / sub,
                               root / "yahoo" / "ydata-labeled-time-series-anomalies-v1_0" / sub});
    if (!dir) fail(ErrorCode::kIoError, dataset_id + ": no " + sub + " directory under " + root.string());
    const std::regex series_file(R"((real_\d+|synthetic_\d+|A[34]Benchmark-TS\d+)\.csv)");
    for (const auto& entry : fs::directory_iterator(*dir)) {
      const auto name = entry.path().filename().string();
      if (entry.is_regular_file() && std::regex_match(name, series_file)) {
        m.series.push_back({entry.path().stem().string(), entry.path()});
      }
    }
    std::sort(m.series.begin(), m.series.end(), [](const auto& a, const auto& b) {
      return natural_less(a.series_id, b.series_id);
    });
    m.expected_count = it->second.second;
    return m;
  }
  if (dataset_id == "NYCT") {
    auto data = first_existing({root / "nab" / "data" / "realKnownCause" / "nyc_taxi.csv",
                                root / "NAB" / "data" / "realKnownCause" / "nyc_taxi.csv",
                                root / "data" / "realKnownCause" / "nyc_taxi.csv",
                                root / "realKnownCause" / "nyc_taxi.csv"});
    if (!data) fail(ErrorCode::kIoError, "NYCT: nyc_taxi.csv not found under " + root.string());
    m.series.push_back({"nyc_taxi", *data});
    m.expected_count = 1;
    return m;
  }
  fail(ErrorCode::kInvalidArgument, "unknown dataset '" + dataset_id + "'");
}

TimeSeries load_entry(const DatasetManifest& manifest, const ManifestEntry& entry,
                      const fs::path& data_root) {
  if (manifest.dataset_id == "NYCT") {
    // data/realKnownCause/nyc_taxi.csv -> labels/combined_windows.json
    const fs::path nab_root = entry.path.parent_path().parent_path().parent_path();
    auto labels = first_existing({nab_root / "labels" / "combined_windows.json",
                                  data_root / "labels" / "combined_windows.json",
                                  data_root / "nab" / "labels" / "combined_windows.json",
                                  data_root / "combined_windows.json"});
    if (!labels) fail(ErrorCode::kIoError, "NYCT: combined_windows.json not found");
    return load_nab_csv(entry.path, *labels, "realKnownCause/nyc_taxi.csv");
  }
  TimeSeries s = load_yahoo_csv(entry.path);
  return TimeSeries(std::vector<double>(s.values().begin(), s.values().end()),
                    std::vector<Label>(s.labels().begin(), s.labels().end()),
                    entry.series_id, s.period_hint());
}

}  // namespace tsad
