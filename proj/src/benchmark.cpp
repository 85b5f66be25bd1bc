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


#include "tsad/benchmark.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tsad/dataset.hpp"
#include "tsad/detector.hpp"
#include "tsad/error.hpp"
#include "tsad/key_value.hpp"

namespace tsad {
namespace fs = std::filesystem;

namespace {

void append_list(std::vector<std::string>& out, const std::string& value) {
  for (const auto& part : split(value, ',')) {
    std::string item = trim(part);
    if (!item.empty()) out.push_back(std::move(item));
  }
}

long positive(const std::string& value, const std::string& key) {
  const long v = parse_long(value, key);
  if (v < 1) fail(ErrorCode::kInvalidArgument, key + " must be >= 1");
  return v;
}

fs::path data_root(const RunConfig& config) {
  if (!config.data_dir.empty()) return config.data_dir;
  if (const char* env = std::getenv("TSAD_DATA_DIR"); env && *env) return env;
  return ".";
}

ResultRow make_row(const std::string& dataset, const std::string& series,
                   const std::string& detector) {
  ResultRow row;
  row.dataset_id = dataset;
  row.series_id = series;
  row.detector = detector;
  return row;
}

struct LoadedSeries {
  std::string series_id;
  std::optional<TimeSeries> series;
  std::string error;
};

std::string describe(const Error& e) {
  return std::string(error_code_name(e.code())) + ": " + e.what();
}

std::vector<LoadedSeries> load_dataset(const RunConfig& config, const std::string& id) {
  std::vector<LoadedSeries> out;
  if (id == "SYNTH") {
    for (const auto& spec : smoke_specs(config.synth_count, config.seed)) {
      out.push_back({spec.series_id, generate_synthetic(spec), {}});
    }
    return out;
  }
  const fs::path root = data_root(config);
  DatasetManifest manifest;
  if (id == "UD1" || id == "UD2" || id == "UD3" || id == "UD4" || id == "NYCT") {
    manifest = resolve_dataset(id, root);
  } else {
    manifest = load_manifest(id);
  }
  for (const auto& entry : manifest.series) {
    LoadedSeries s{entry.series_id, std::nullopt, {}};
    try {
      s.series = load_entry(manifest, entry, root);
    } catch (const Error& e) {
      s.error = describe(e);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "dataset" || key == "datasets") {
    append_list(c.datasets, value);
  } else if (key == "detector" || key == "detectors") {
    std::vector<std::string> names;
    append_list(names, value);
    for (const auto& name : names) {
      if (name != "all") {
        c.detectors.push_back(name);
        continue;
      }
      for (const auto& info : detector_catalog()) c.detectors.push_back(info.name);
    }
  } else if (key == "standardize") {
    c.standardize = parse_bool(value, key);
  } else if (key == "detrend") {
    c.detrend = parse_bool(value, key);
  } else if (key == "deseasonalize") {
    c.deseasonalize = parse_bool(value, key);
  } else if (key == "period") {
    c.period = static_cast<int>(positive(value, key));
  } else if (key == "seed") {
    const long v = parse_long(value, key);
    if (v < 0) fail(ErrorCode::kInvalidArgument, "seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(v);
  } else if (key == "output_dir" || key == "out") {
    c.output_dir = value;
  } else if (key == "repeat") {
    c.repeat = static_cast<int>(positive(value, key));
  } else if (key == "data_dir") {
    c.data_dir = value;
  } else if (key == "window_width") {
    c.window_width = static_cast<std::size_t>(positive(value, key));
  } else if (key == "synth_count") {
    c.synth_count = static_cast<std::size_t>(positive(value, key));
  } else if (key == "train_ratio") {
    c.split.train_ratio = parse_double(value, key);
    c.split.test_ratio = 1.0 - c.split.train_ratio;
  } else if (key == "validation_ratio") {
    c.split.validation_of_train = parse_double(value, key);
  } else if (auto dot = key.find('.'); dot != std::string::npos && dot > 0) {
    const std::string detector = key.substr(0, dot);
    find_detector(detector);
    c.detector_params[detector][key.substr(dot + 1)] = value;
  } else {
    fail(ErrorCode::kParseError, "unknown configuration key '" + key + "'");
  }
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  for (const auto& [key, value] : parse_key_values(text)) apply_setting(config, key, value);
  return config;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string_view status_name(RowStatus status) noexcept {
  switch (status) {
    case RowStatus::kOk: return "ok";
    case RowStatus::kExcluded: return "excluded";
    case RowStatus::kFailed: return "failed";
  }
  return "failed";
}

std::size_t BenchmarkResult::ok_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.status == RowStatus::kOk;
  return n;
}

std::vector<DatasetSummary> BenchmarkResult::summarize() const {
  std::vector<DatasetSummary> out;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const DatasetSummary& s) {
      return s.dataset_id == r.dataset_id && s.detector == r.detector;
    });
    if (it == out.end()) {
      out.push_back({r.dataset_id, r.detector, 0, std::nullopt, 0.0, 0.0});
      it = out.end() - 1;
    }
    if (r.status != RowStatus::kOk) continue;
    const double prev = it->mean_auc.value_or(0.0) * static_cast<double>(it->ok_rows);
    ++it->ok_rows;
    it->mean_auc = (prev + *r.report.auc) / static_cast<double>(it->ok_rows);
    it->total_seconds += r.report.total_seconds();
  }
  for (auto& s : out) {
    if (s.ok_rows) s.mean_seconds_per_series = s.total_seconds / static_cast<double>(s.ok_rows);
  }
  return out;
}

ResultRow run_row(const RunConfig& config, const std::string& dataset_id,
                  const TimeSeries& series, const std::string& detector) {
  ResultRow row = make_row(dataset_id, series.id(), detector);
  try {
    SplitResult parts = split(series, config.split);
    TimeSeries train = std::move(parts.train);
    TimeSeries test = std::move(parts.test);
    if (test.anomaly_count() == 0) {
      row.status = RowStatus::kExcluded;
      row.failure_reason = "test split has no anomalies";
      return row;
    }
    if (config.standardize) {
      const StandardizeParams params = fit_standardizer(train);
      train = apply(params, train);
      test = apply(params, test);
    }
    if (config.detrend) {
      train = difference(train, 1);
      test = difference(test, 1);
    }
    if (config.deseasonalize) {
      const std::optional<int> period = config.period ? config.period : series.period_hint();
      if (!period) fail(ErrorCode::kInvalidPeriod, "deseasonalize needs a period");
      train = seasonal_difference(train, *period);
      test = seasonal_difference(test, *period);
    }
    if (test.anomaly_count() == 0) {
      row.status = RowStatus::kExcluded;
      row.failure_reason = "test split has no anomalies after preprocessing";
      return row;
    }

    DetectorConfig dc;
    dc.name = detector;
    dc.window_width = config.window_width;
    dc.seed = config.seed;
    if (auto it = config.detector_params.find(detector); it != config.detector_params.end()) {
      dc.hyperparameters = it->second;
    }

    double train_seconds = 0.0;
    double inference_seconds = 0.0;
    TimedRun run;
    for (int r = 0; r < config.repeat; ++r) {
      run = timed_run(dc, train, test);
      if (!run.ok) break;
      train_seconds += run.report.train_seconds;
      inference_seconds += run.report.inference_seconds;
    }
    if (!run.ok) {
      row.failure_reason = run.failure_reason;
      return row;
    }
    row.status = RowStatus::kOk;
    row.report = run.report;
    row.report.train_seconds = train_seconds / config.repeat;
    row.report.inference_seconds = inference_seconds / config.repeat;
    row.roc = std::move(run.roc);
  } catch (const Error& e) {
    row.status = RowStatus::kFailed;
    row.failure_reason = describe(e);
  }
  return row;
}

BenchmarkResult run_benchmark(const RunConfig& config, const ProgressFn& progress) {
  if (config.detectors.empty()) fail(ErrorCode::kInvalidArgument, "no detectors selected");
  if (config.datasets.empty()) fail(ErrorCode::kInvalidArgument, "no datasets selected");
  for (const auto& d : config.detectors) find_detector(d);

  BenchmarkResult result;
  for (const auto& dataset : config.datasets) {
    for (const auto& loaded : load_dataset(config, dataset)) {
      for (const auto& detector : config.detectors) {
        ResultRow row;
        if (loaded.series) {
          row = run_row(config, dataset, *loaded.series, detector);
        } else {
          row = make_row(dataset, loaded.series_id, detector);
          row.failure_reason = loaded.error;
        }
        if (progress) progress(row);
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

}  // namespace tsad
