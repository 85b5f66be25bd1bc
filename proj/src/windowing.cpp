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

#include "tsad/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tsad/error.hpp"

namespace tsad {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kLabelFileMissingEntry: return "LabelFileMissingEntry";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kConstantSeries: return "ConstantSeries";
    case ErrorCode::kInvalidPeriod: return "InvalidPeriod";
    case ErrorCode::kSingularDesign: return "SingularDesign";
    case ErrorCode::kOrderTooLarge: return "OrderTooLarge";
    case ErrorCode::kInvalidOrder: return "InvalidOrder";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kPeriodTooLong: return "PeriodTooLong";
    case ErrorCode::kTooFewWindows: return "TooFewWindows";
    case ErrorCode::kNoCorePoints: return "NoCorePoints";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNumericalDivergence: return "NumericalDivergence";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kNaiveZero: return "NaiveZero";
    case ErrorCode::kUnknownDetector: return "UnknownDetector";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

TimeSeries::TimeSeries(std::vector<double> values,
                       std::optional<std::vector<Label>> labels,
                       std::string series_id, std::optional<int> period_hint)
    : values_(std::move(values)),
      labels_(std::move(labels)),
      series_id_(std::move(series_id)),
      period_hint_(period_hint) {
  if (values_.empty()) fail(ErrorCode::kInvalidArgument, "time series is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      fail(ErrorCode::kInvalidArgument,
           "non-finite value at index " + std::to_string(i));
    }
  }
  if (labels_) {
    if (labels_->size() != values_.size()) {
      fail(ErrorCode::kInvalidArgument, "label count does not match value count");
    }
    for (Label l : *labels_) {
      if (l > 1) fail(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
    }
  }
  if (period_hint_ && *period_hint_ < 1) {
    fail(ErrorCode::kInvalidPeriod, "period hint must be positive");
  }
}

std::size_t TimeSeries::anomaly_count() const noexcept {
  if (!labels_) return 0;
  return static_cast<std::size_t>(std::count(labels_->begin(), labels_->end(), Label{1}));
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > values_.size()) {
    fail(ErrorCode::kInvalidArgument, "invalid slice bounds");
  }
  std::vector<double> v(values_.begin() + begin, values_.begin() + end);
  std::optional<std::vector<Label>> l;
  if (labels_) l.emplace(labels_->begin() + begin, labels_->begin() + end);
  return TimeSeries(std::move(v), std::move(l), series_id_, period_hint_);
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
  return TimeSeries(std::move(values), labels_, series_id_, period_hint_);
}

double DetectorConfig::get_double(const std::string& key, double fallback) const {
  auto it = hyperparameters.find(key);
  if (it == hyperparameters.end()) return fallback;
  char* end = nullptr;
  double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0' || !std::isfinite(v)) {
    fail(ErrorCode::kInvalidArgument, "hyperparameter '" + key + "' is not a number");
  }
  return v;
}

long DetectorConfig::get_int(const std::string& key, long fallback) const {
  auto it = hyperparameters.find(key);
  if (it == hyperparameters.end()) return fallback;
  char* end = nullptr;
  long v = std::strtol(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0') {
    fail(ErrorCode::kInvalidArgument, "hyperparameter '" + key + "' is not an integer");
  }
  return v;
}

std::string DetectorConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  auto it = hyperparameters.find(key);
  return it == hyperparameters.end() ? fallback : it->second;
}

WindowFrame frame(const TimeSeries& series, std::size_t width, std::size_t stride) {
  if (width < 1) fail(ErrorCode::kInvalidArgument, "window width must be >= 1");
  if (stride < 1) fail(ErrorCode::kInvalidArgument, "stride must be >= 1");
  const std::size_t n = series.size();
  if (n <= width) {
    fail(ErrorCode::kSeriesTooShort, "series of length " + std::to_string(n) +
                                         " has no target for window width " +
                                         std::to_string(width));
  }
  const std::size_t m = (n - width - 1) / stride + 1;
  WindowFrame out;
  out.width = width;
  out.stride = stride;
  out.data.reserve(m * width);
  out.targets.reserve(m);
  out.target_indices.reserve(m);
  auto v = series.values();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t t = width + i * stride;
    out.data.insert(out.data.end(), v.begin() + (t - width), v.begin() + t);
    out.targets.push_back(v[t]);
    out.target_indices.push_back(t);
  }
  return out;
}

WindowFrame with_targets(const WindowFrame& f) {
  WindowFrame out;
  out.width = f.width + 1;
  out.stride = f.stride;
  out.targets = f.targets;
  out.target_indices = f.target_indices;
  out.data.reserve(f.rows() * out.width);
  for (std::size_t i = 0; i < f.rows(); ++i) {
    auto w = f.window(i);
    out.data.insert(out.data.end(), w.begin(), w.end());
    out.data.push_back(f.targets[i]);
  }
  return out;
}

std::vector<Label> binarize(std::span<const double> scores, Threshold delta) {
  std::vector<Label> out(scores.size());
  std::transform(scores.begin(), scores.end(), out.begin(),
                 [&](double s) { return static_cast<Label>(s > delta.delta); });
  return out;
}

std::vector<Label> binarize(const ScoreSeries& scores, Threshold delta) {
  return binarize(std::span<const double>(scores.scores), delta);
}

}  // namespace tsad
