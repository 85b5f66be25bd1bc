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

#ifndef TSAD_PREPROCESSING_HPP
#define TSAD_PREPROCESSING_HPP

#include <span>
#include <vector>

#include "tsad/types.hpp"

namespace tsad {

struct SplitSpec {
  double train_ratio = 0.3;
  double test_ratio = 0.7;
  double validation_of_train = 0.1;
};

struct SplitResult {
  TimeSeries train;
  TimeSeries validation;
  TimeSeries test;
};

struct SplitLengths {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// Lengths only: head = floor(train_ratio * N), validation =
/// max(1, floor(validation_of_train * head)), train = head - validation,
/// test = N - head. Throws kSeriesTooShort for N < 10.
SplitLengths split_lengths(std::size_t n, const SplitSpec& spec = {});

/// Chronological train | validation | test split.
SplitResult split(const TimeSeries& series, const SplitSpec& spec = {});

struct StandardizeParams {
  double mu = 0.0;
  double sigma = 1.0;
};

/// Mean and population standard deviation of `train`. Throws kConstantSeries
/// when sigma is zero and kSeriesTooShort below two points.
StandardizeParams fit_standardizer(const TimeSeries& train);
TimeSeries apply(const StandardizeParams& params, const TimeSeries& series);

/// d-fold first differencing; a differenced point keeps the label of its
/// right endpoint.
TimeSeries difference(const TimeSeries& series, int order);

/// Inverse of difference(): `heads` are the first `order` original values.
std::vector<double> integrate(std::span<const double> differenced,
                              std::span<const double> heads, int order);

/// X'_t = X_t - X_{t-period}.
TimeSeries seasonal_difference(const TimeSeries& series, int period);

}  // namespace tsad

#endif  // TSAD_PREPROCESSING_HPP
