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


#include <cmath>
#include <limits>

#include "tsad/error.hpp"
#include "tsad/ml.hpp"

namespace tsad {

std::vector<std::size_t> epsilon_neighbour_counts(const WindowFrame& frame, double epsilon) {
  const std::size_t n = frame.rows();
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (minkowski(frame.window(i), frame.window(j), 2.0) <= epsilon) {
        ++counts[i];
        ++counts[j];
      }
    }
  }
  return counts;
}

DbscanModel dbscan_fit(const WindowFrame& train, double epsilon, std::size_t min_points) {
  if (!(epsilon > 0.0)) fail(ErrorCode::kInvalidArgument, "DBSCAN epsilon must be positive");
  if (min_points < 1) fail(ErrorCode::kInvalidArgument, "DBSCAN min points must be >= 1");
  DbscanModel model;
  model.epsilon = epsilon;
  model.min_points = min_points;
  model.width = train.width;
  const auto counts = epsilon_neighbour_counts(train, epsilon);
  for (std::size_t i = 0; i < train.rows(); ++i) {
    if (counts[i] < min_points) continue;
    const auto row = train.window(i);
    model.core_points.insert(model.core_points.end(), row.begin(), row.end());
    ++model.core_count;
  }
  if (model.core_count == 0) {
    fail(ErrorCode::kNoCorePoints, "no training window has " + std::to_string(min_points) +
                                       " neighbours within epsilon " + std::to_string(epsilon));
  }
  return model;
}

ScoreSeries dbscan_score(const DbscanModel& model, const WindowFrame& test) {
  if (test.width != model.width) fail(ErrorCode::kDimensionMismatch, "DBSCAN width mismatch");
  ScoreSeries out;
  out.detector_name = "dbscan";
  out.indices = test.target_indices;
  out.scores.reserve(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.core_count; ++c) {
      std::span<const double> core(model.core_points.data() + c * model.width, model.width);
      best = std::min(best, minkowski(test.window(i), core, 2.0));
    }
    out.scores.push_back(best <= model.epsilon ? 0.0 : best);
  }
  return out;
}

ScoreSeries dbscan_score(const WindowFrame& train, const WindowFrame& test, double epsilon,
                         std::size_t min_points) {
  return dbscan_score(dbscan_fit(train, epsilon, min_points), test);
}

}  // namespace tsad
