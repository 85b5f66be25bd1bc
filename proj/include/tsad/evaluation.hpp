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


#ifndef TSAD_EVALUATION_HPP
#define TSAD_EVALUATION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsad/detector.hpp"
#include "tsad/error.hpp"
#include "tsad/types.hpp"

namespace tsad {

struct RocCurve {
  std::vector<double> fpr;  // starts at 0, ends at 1
  std::vector<double> tpr;
  std::vector<double> thresholds;  // point i predicts score >= thresholds[i]
};

struct AucResult {
  RocCurve curve;
  double auc = 0.0;
};

struct F1Result {
  double f1 = 0.0;
  double threshold = 0.0;  // predicts score > threshold
};

/// Labels of `series` at the indices `scores` covers.
std::vector<Label> aligned_labels(const ScoreSeries& scores, const TimeSeries& series);

/// Sweep over unique scores with trapezoidal area; ties move together.
/// Throws kDegenerateLabels without both classes.
AucResult roc_auc(std::span<const double> scores, std::span<const Label> labels);
AucResult roc_auc(const ScoreSeries& scores, const TimeSeries& series);

/// Best F1 over thresholds at the midpoints of sorted unique scores plus one
/// below the minimum (every point predicted anomalous).
F1Result best_f1(std::span<const double> scores, std::span<const Label> labels);
F1Result best_f1(const ScoreSeries& scores, const TimeSeries& series);

/// F1 of the rule score > threshold.
double f1_at(std::span<const double> scores, std::span<const Label> labels, double threshold);

/// model_mse / naive_mse. Throws kNaiveZero when naive_mse is not positive.
double nmm(double model_mse, double naive_mse);

struct ForecastErrors {
  double model_mse = 0.0;
  double naive_mse = 0.0;
};

/// Mean squared one-step errors of `forecast` and of the last-value forecast
/// x_{t-1}, over the forecast indices that have a predecessor.
ForecastErrors forecast_errors(const TimeSeries& test, const Forecast& forecast);

struct EvalReport {
  std::optional<double> auc;
  std::optional<double> best_f1;
  std::optional<double> best_f1_threshold;
  std::optional<double> nmm;
  double train_seconds = 0.0;
  double inference_seconds = 0.0;
  std::size_t n_scored = 0;
  std::size_t n_anomalies = 0;
  double total_seconds() const noexcept { return train_seconds + inference_seconds; }
};

struct TimedRun {
  bool ok = false;
  ErrorCode error = ErrorCode::kOk;
  std::string failure_reason;
  EvalReport report;
  ScoreSeries scores;
  RocCurve roc;
};

/// Fits and scores one detector under a monotonic clock. Must run on a single
/// thread with nothing else competing. Detector errors are captured in the
/// result rather than thrown.
TimedRun timed_run(const DetectorConfig& config, const TimeSeries& train,
                   const TimeSeries& test);

}  // namespace tsad

#endif  // TSAD_EVALUATION_HPP
