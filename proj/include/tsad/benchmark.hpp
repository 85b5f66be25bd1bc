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


#ifndef TSAD_BENCHMARK_HPP
#define TSAD_BENCHMARK_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsad/evaluation.hpp"
#include "tsad/preprocessing.hpp"

namespace tsad {

struct RunConfig {
  // UD1..UD4, NYCT, SYNTH, or a path to a manifest file.
  std::vector<std::string> datasets;
  std::vector<std::string> detectors;
  bool standardize = true;
  bool detrend = false;
  bool deseasonalize = false;
  std::optional<int> period;  // season length for deseasonalize; else the series hint
  SplitSpec split;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "tsad_results";
  int repeat = 1;
  std::filesystem::path data_dir;  // empty: $TSAD_DATA_DIR
  std::size_t window_width = 30;
  std::size_t synth_count = 5;
  // Per-detector hyperparameters: detector -> key -> value.
  std::map<std::string, std::map<std::string, std::string>> detector_params;
};

/// Applies one `key=value` setting. Keys: dataset, detector (repeatable or
/// comma separated), standardize, detrend, deseasonalize, period, seed,
/// output_dir, repeat, data_dir, window_width, synth_count, train_ratio,
/// validation_ratio and `<detector>.<hyperparameter>`.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

enum class RowStatus { kOk, kExcluded, kFailed };
std::string_view status_name(RowStatus status) noexcept;

struct ResultRow {
  std::string dataset_id;
  std::string series_id;
  std::string detector;
  RowStatus status = RowStatus::kFailed;
  EvalReport report;
  std::string failure_reason;
  RocCurve roc;
};

struct DatasetSummary {
  std::string dataset_id;
  std::string detector;
  std::size_t ok_rows = 0;
  std::optional<double> mean_auc;
  double total_seconds = 0.0;
  double mean_seconds_per_series = 0.0;
};

struct BenchmarkResult {
  std::vector<ResultRow> rows;
  std::size_t ok_count() const;
  /// One entry per (dataset, detector) in first-seen order.
  std::vector<DatasetSummary> summarize() const;
};

using ProgressFn = std::function<void(const ResultRow&)>;

/// Runs every detector on every series of every dataset, one row at a time on
/// the calling thread. Failures become rows; only an unresolvable dataset or
/// an empty detector list throws.
BenchmarkResult run_benchmark(const RunConfig& config, const ProgressFn& progress = {});

/// Runs the per-series pipeline for one detector on an already loaded series.
ResultRow run_row(const RunConfig& config, const std::string& dataset_id,
                  const TimeSeries& series, const std::string& detector);

/// results.csv text. Timing columns are left out when `with_timing` is false.
std::string results_csv(const std::vector<ResultRow>& rows, bool with_timing = true);
std::string summary_json(const BenchmarkResult& result);
std::string roc_csv(const RocCurve& curve);

/// Writes results.csv, summary.json and roc/<series>_<detector>.csv under
/// `output_dir`. Throws kIoError.
void emit_reports(const BenchmarkResult& result, const std::filesystem::path& output_dir);

}  // namespace tsad

#endif  // TSAD_BENCHMARK_HPP
