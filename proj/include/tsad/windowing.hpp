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

#ifndef TSAD_WINDOWING_HPP
#define TSAD_WINDOWING_HPP

#include <span>
#include <vector>

#include "tsad/types.hpp"

namespace tsad {

/// Slices `series` into windows of `width` values, each followed by a target.
/// Produces floor((N - width - 1) / stride) + 1 rows. Throws kSeriesTooShort
/// when N <= width.
WindowFrame frame(const TimeSeries& series, std::size_t width, std::size_t stride = 1);

/// Appends each target to its window, giving rows of width + 1 values that end
/// at target_indices[i]. Window detectors score these rows.
WindowFrame with_targets(const WindowFrame& frame);

/// output[i] == 1 iff scores[i] > delta.
std::vector<Label> binarize(const ScoreSeries& scores, Threshold delta);
std::vector<Label> binarize(std::span<const double> scores, Threshold delta);

}  // namespace tsad

#endif  // TSAD_WINDOWING_HPP
