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

#include "tsad/preprocessing.hpp"

#include <cmath>

#include "tsad/error.hpp"

namespace tsad {
namespace {

// Ratios like 0.3 * 10 land a hair above the integer in binary floating point.
std::size_t floor_count(double ratio, std::size_t n) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
}

TimeSeries drop_front_labels(const TimeSeries& src, std::vector<double> values,
                             std::size_t dropped) {
  std::optional<std::vector<Label>> labels;
  if (src.has_labels()) labels.emplace(src.labels().begin() + dropped, src.labels().end());
  return TimeSeries(std::move(values), std::move(labels), src.id(), src.period_hint());
}

}  // namespace

SplitLengths split_lengths(std::size_t n, const SplitSpec& spec) {
  auto in_unit = [](double r) { return r > 0.0 && r < 1.0; };
  if (!in_unit(spec.train_ratio) || !in_unit(spec.test_ratio) ||
      !in_unit(spec.validation_of_train) ||
      std::abs(spec.train_ratio + spec.test_ratio - 1.0) > 1e-12) {
    fail(ErrorCode::kInvalidArgument, "split ratios must lie in (0,1) and train + test == 1");
  }
  if (n < 10) {
    fail(ErrorCode::kSeriesTooShort, "split needs at least 10 points, got " + std::to_string(n));
  }
  const std::size_t head = floor_count(spec.train_ratio, n);
  SplitLengths out;
  out.validation = std::max<std::size_t>(1, floor_count(spec.validation_of_train, head));
  out.train = head - out.validation;
  out.test = n - head;
  if (out.train == 0) fail(ErrorCode::kSeriesTooShort, "empty training split");
  return out;
}

SplitResult split(const TimeSeries& series, const SplitSpec& spec) {
  const SplitLengths len = split_lengths(series.size(), spec);
  const std::size_t head = len.train + len.validation;
  return SplitResult{series.slice(0, len.train), series.slice(len.train, head),
                     series.slice(head, series.size())};
}

StandardizeParams fit_standardizer(const TimeSeries& train) {
  if (train.size() < 2) fail(ErrorCode::kSeriesTooShort, "standardizer needs >= 2 points");
  const auto v = train.values();
  double mu = 0.0;
  for (double x : v) mu += x;
  mu /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  const double sigma = std::sqrt(ss / static_cast<double>(v.size()));
  if (!(sigma > 1e-12 * std::max(1.0, std::abs(mu)))) {
    fail(ErrorCode::kConstantSeries, "training segment is constant");
  }
  return {mu, sigma};
}

TimeSeries apply(const StandardizeParams& params, const TimeSeries& series) {
  std::vector<double> out(series.values().begin(), series.values().end());
  for (double& x : out) x = (x - params.mu) / params.sigma;
  return series.with_values(std::move(out));
}

TimeSeries difference(const TimeSeries& series, int order) {
  if (order < 0) fail(ErrorCode::kInvalidOrder, "differencing order must be >= 0");
  const auto d = static_cast<std::size_t>(order);
  if (series.size() <= d) {
    fail(ErrorCode::kSeriesTooShort, "series of length " + std::to_string(series.size()) +
                                         " cannot be differenced " + std::to_string(d) + " times");
  }
  std::vector<double> v(series.values().begin(), series.values().end());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = v.size() - 1; i > 0; --i) v[i] -= v[i - 1];
    v.erase(v.begin());
  }
  return drop_front_labels(series, std::move(v), d);
}

std::vector<double> integrate(std::span<const double> differenced,
                              std::span<const double> heads, int order) {
  const auto d = static_cast<std::size_t>(order);
  if (order < 0 || heads.size() != d) {
    fail(ErrorCode::kInvalidArgument, "integrate needs exactly `order` head values");
  }
  // first[k] = first element of the k-times differenced series.
  std::vector<double> h(heads.begin(), heads.end());
  std::vector<double> first(d);
  for (std::size_t k = 0; k < d; ++k) {
    first[k] = h[0];
    for (std::size_t i = 0; i + 1 < h.size(); ++i) h[i] = h[i + 1] - h[i];
    h.pop_back();
  }
  std::vector<double> cur(differenced.begin(), differenced.end());
  for (std::size_t k = d; k-- > 0;) {
    std::vector<double> up(cur.size() + 1);
    up[0] = first[k];
    for (std::size_t i = 0; i < cur.size(); ++i) up[i + 1] = up[i] + cur[i];
    cur = std::move(up);
  }
  return cur;
}

TimeSeries seasonal_difference(const TimeSeries& series, int period) {
  if (period < 1) fail(ErrorCode::kInvalidPeriod, "season period must be >= 1");
  const auto n = static_cast<std::size_t>(period);
  if (series.size() <= n) {
    fail(ErrorCode::kSeriesTooShort, "series shorter than one season plus one point");
  }
  const auto v = series.values();
  std::vector<double> out(v.size() - n);
  for (std::size_t t = n; t < v.size(); ++t) out[t - n] = v[t] - v[t - n];
  return drop_front_labels(series, std::move(out), n);
}

}  // namespace tsad
