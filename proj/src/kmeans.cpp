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
#include <random>

#include "tsad/error.hpp"
#include "tsad/ml.hpp"

namespace tsad {
namespace {

double squared_distance(std::span<const double> a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Index of the nearest centroid and its squared distance.
std::pair<std::size_t, double> nearest(const KMeansModel& m, std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m.k; ++c) {
    const double d = squared_distance(x, m.centroids.data() + c * m.width);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return {best, best_d};
}

}  // namespace

KMeansModel kmeans_fit(const WindowFrame& train, std::size_t k, std::uint64_t seed,
                       int max_iterations) {
  const std::size_t n = train.rows();
  const std::size_t w = train.width;
  if (k < 1) fail(ErrorCode::kInvalidArgument, "k-means needs k >= 1");
  if (n < k) {
    fail(ErrorCode::kTooFewWindows, "k-means with k=" + std::to_string(k) + " got only " +
                                        std::to_string(n) + " windows");
  }
  KMeansModel model;
  model.k = k;
  model.width = w;
  model.centroids.resize(k * w);

  // k-means++ seeding.
  std::mt19937_64 rng(seed);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (std::size_t c = 0; c < k; ++c) {
    std::copy_n(train.window(pick).begin(), w, model.centroids.begin() + c * w);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(train.window(i), model.centroids.data() + c * w));
      total += d2[i];
    }
    if (c + 1 == k) break;
    if (total > 0.0) {
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        r -= d2[i];
        if (r < 0.0 && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }
  }

  std::vector<std::size_t> assign(n, k);
  for (int it = 1; it <= max_iterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = nearest(model, train.window(i)).first;
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    model.iterations = it;
    std::vector<double> sums(k * w, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = train.window(i);
      for (std::size_t j = 0; j < w; ++j) sums[assign[i] * w + j] += row[j];
      ++counts[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      // An emptied cluster keeps its previous centroid.
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < w; ++j) {
        model.centroids[c * w + j] = sums[c * w + j] / static_cast<double>(counts[c]);
      }
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      inertia += squared_distance(train.window(i), model.centroids.data() + assign[i] * w);
    }
    model.inertia_history.push_back(inertia);
  }
  model.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) model.inertia += nearest(model, train.window(i)).second;
  return model;
}

ScoreSeries kmeans_score(const KMeansModel& model, const WindowFrame& test) {
  if (test.width != model.width) {
    fail(ErrorCode::kDimensionMismatch, "k-means window width mismatch");
  }
  ScoreSeries out;
  out.detector_name = "kmeans";
  out.indices = test.target_indices;
  out.scores.reserve(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) {
    out.scores.push_back(std::sqrt(nearest(model, test.window(i)).second));
  }
  return out;
}

}  // namespace tsad
