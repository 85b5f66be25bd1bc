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


#include "tsad/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>

namespace tsad {
namespace {

struct Counts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

Counts count_classes(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) {
    fail(ErrorCode::kDimensionMismatch, "scores and labels differ in length");
  }
  Counts c;
  for (Label l : labels) (l ? c.positives : c.negatives)++;
  if (c.positives == 0 || c.negatives == 0) {
    fail(ErrorCode::kDegenerateLabels, "need at least one anomalous and one normal point");
  }
  return c;
}

// Indices ordered by descending score.
std::vector<std::size_t> descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

double f1_from(std::size_t tp, std::size_t predicted, std::size_t positives) {
  if (predicted == 0 || tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(predicted);
  const double recall = static_cast<double>(tp) / static_cast<double>(positives);
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

std::vector<Label> aligned_labels(const ScoreSeries& scores, const TimeSeries& series) {
  if (!series.has_labels()) fail(ErrorCode::kDegenerateLabels, "series has no labels");
  std::vector<Label> out;
  out.reserve(scores.indices.size());
  for (std::size_t i : scores.indices) {
    if (i >= series.size()) fail(ErrorCode::kDimensionMismatch, "score index out of range");
    out.push_back(series.labels()[i]);
  }
  return out;
}

AucResult roc_auc(std::span<const double> scores, std::span<const Label> labels) {
  const Counts c = count_classes(scores, labels);
  const auto order = descending(scores);
  AucResult r;
  r.curve.fpr.push_back(0.0);
  r.curve.tpr.push_back(0.0);
  r.curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  std::size_t tp = 0, fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    const std::size_t tp0 = tp, fp0 = fp;
    for (; i < order.size() && scores[order[i]] == s; ++i) (labels[order[i]] ? tp : fp)++;
    // Trapezoid in counts keeps the area exact up to one final division.
    area += static_cast<double>(fp - fp0) * static_cast<double>(tp + tp0) * 0.5;
    r.curve.fpr.push_back(static_cast<double>(fp) / static_cast<double>(c.negatives));
    r.curve.tpr.push_back(static_cast<double>(tp) / static_cast<double>(c.positives));
    r.curve.thresholds.push_back(s);
  }
  r.auc = area / (static_cast<double>(c.positives) * static_cast<double>(c.negatives));
  return r;
}

AucResult roc_auc(const ScoreSeries& scores, const TimeSeries& series) {
  const auto labels = aligned_labels(scores, series);
  return roc_auc(scores.scores, labels);
}

F1Result best_f1(std::span<const double> scores, std::span<const Label> labels) {
  const Counts c = count_classes(scores, labels);
  const auto order = descending(scores);
  F1Result best{0.0, 0.0};
  bool have = false;
  std::size_t tp = 0, predicted = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      ++predicted;
      if (labels[order[i]]) ++tp;
    }
    // Cut just below s: the midpoint to the next lower score, or below the
    // minimum for the predict-all threshold.
    const double threshold =
        i < order.size() ? 0.5 * (s + scores[order[i]])
                         : std::nextafter(s, -std::numeric_limits<double>::infinity());
    const double f = f1_from(tp, predicted, c.positives);
    if (!have || f > best.f1) {
      best = {f, threshold};
      have = true;
    }
  }
  return best;
}

F1Result best_f1(const ScoreSeries& scores, const TimeSeries& series) {
  const auto labels = aligned_labels(scores, series);
  return best_f1(scores.scores, labels);
}

double f1_at(std::span<const double> scores, std::span<const Label> labels, double threshold) {
  const Counts c = count_classes(scores, labels);
  std::size_t tp = 0, predicted = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > threshold) {
      ++predicted;
      if (labels[i]) ++tp;
    }
  }
  return f1_from(tp, predicted, c.positives);
}

double nmm(double model_mse, double naive_mse) {
  if (!(naive_mse > 0.0)) fail(ErrorCode::kNaiveZero, "naive model error is zero");
  return model_mse / naive_mse;
}

ForecastErrors forecast_errors(const TimeSeries& test, const Forecast& forecast) {
  ForecastErrors e;
  std::size_t n = 0;
  for (std::size_t i = 0; i < forecast.indices.size(); ++i) {
    const std::size_t t = forecast.indices[i];
    if (t == 0) continue;
    const double m = test[t] - forecast.predictions[i];
    const double nv = test[t] - test[t - 1];
    e.model_mse += m * m;
    e.naive_mse += nv * nv;
    ++n;
  }
  if (n == 0) fail(ErrorCode::kSeriesTooShort, "no forecast points to compare");
  e.model_mse /= static_cast<double>(n);
  e.naive_mse /= static_cast<double>(n);
  return e;
}

TimedRun timed_run(const DetectorConfig& config, const TimeSeries& train,
                   const TimeSeries& test) {
  using Clock = std::chrono::steady_clock;
  TimedRun run;
  try {
    const auto t0 = Clock::now();
    const auto fitted = fit_detector(train, config);
    const auto t1 = Clock::now();
    run.scores = fitted->score(test);
    const auto t2 = Clock::now();
    run.report.train_seconds = std::chrono::duration<double>(t1 - t0).count();
    run.report.inference_seconds = std::chrono::duration<double>(t2 - t1).count();
    run.report.n_scored = run.scores.size();

    const auto labels = aligned_labels(run.scores, test);
    run.report.n_anomalies = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    AucResult roc = roc_auc(run.scores.scores, labels);
    run.report.auc = roc.auc;
    run.roc = std::move(roc.curve);
    const F1Result f1 = best_f1(run.scores.scores, labels);
    run.report.best_f1 = f1.f1;
    run.report.best_f1_threshold = f1.threshold;

    if (const auto fc = fitted->forecast(test)) {
      const ForecastErrors e = forecast_errors(test, *fc);
      if (e.naive_mse > 0.0) run.report.nmm = nmm(e.model_mse, e.naive_mse);
    }
    run.ok = true;
  } catch (const Error& e) {
    run.error = e.code();
    run.failure_reason = std::string(error_code_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    run.error = ErrorCode::kInternal;
    run.failure_reason = std::string("Internal: ") + e.what();
  }
  return run;
}

}  // namespace tsad
