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


#include <algorithm>
#include <cmath>

#include "tsad/error.hpp"
#include "tsad/ml.hpp"

namespace tsad {
namespace {

constexpr double kDensityFloor = 1e-12;

std::span<const double> row(const LofModel& m, std::size_t i) {
  return {m.reference.data() + i * m.width, m.width};
}

// k-distance of reference row y once the query (at distance dq) joins.
double k_distance_with_query(const LofModel& m, std::size_t y, double dq) {
  const auto& nb = m.neighbours[y];
  const double kd = nb[m.k - 1].distance;
  if (dq >= kd) return kd;
  // The query becomes one of the k nearest; the old (k-1)-th moves up.
  return m.k == 1 ? dq : std::max(dq, nb[m.k - 2].distance);
}

}  // namespace

double minkowski(std::span<const double> a, std::span<const double> b, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), p);
  return std::pow(s, 1.0 / p);
}

LofModel lof_fit(const WindowFrame& reference, std::size_t k, double p) {
  const std::size_t n = reference.rows();
  if (k < 1) fail(ErrorCode::kInvalidArgument, "LOF needs k >= 1");
  if (!(p >= 1.0)) fail(ErrorCode::kInvalidArgument, "Minkowski order must be >= 1");
  if (n <= k) {
    fail(ErrorCode::kTooFewWindows, "LOF with k=" + std::to_string(k) + " needs more than " +
                                        std::to_string(k) + " reference windows");
  }
  LofModel m;
  m.k = k;
  m.p = p;
  m.width = reference.width;
  m.reference = reference.data;
  m.reference.resize(n * m.width);
  m.neighbours.resize(n);
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = minkowski(row(m, i), row(m, j), p);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }
  std::vector<LofNeighbour> all;
  for (std::size_t i = 0; i < n; ++i) {
    all.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) all.push_back({dist[i * n + j], j});
    }
    auto by_distance = [](const LofNeighbour& a, const LofNeighbour& b) {
      return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    };
    std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k - 1), all.end(),
                     by_distance);
    const double kd = all[k - 1].distance;
    auto& nb = m.neighbours[i];
    for (const auto& e : all) {
      if (e.distance <= kd) nb.push_back(e);
    }
    std::sort(nb.begin(), nb.end(), by_distance);
  }
  return m;
}

double lof_score(const LofModel& m, std::span<const double> query) {
  if (query.size() != m.width) fail(ErrorCode::kDimensionMismatch, "LOF query width mismatch");
  const std::size_t n = m.rows();
  std::vector<double> dq(n);
  for (std::size_t i = 0; i < n; ++i) dq[i] = minkowski(query, row(m, i), m.p);

  // Neighbourhood of the query: all reference rows within its k-distance.
  std::vector<double> sorted = dq;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(m.k - 1),
                   sorted.end());
  const double kd_query = sorted[m.k - 1];

  std::vector<double> kd(n);
  for (std::size_t y = 0; y < n; ++y) kd[y] = k_distance_with_query(m, y, dq[y]);

  // Local reachability density of reference row o inside reference + {query}.
  auto lrd = [&](std::size_t o) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& e : m.neighbours[o]) {
      if (e.distance > kd[o]) break;
      sum += std::max(kd[e.index], e.distance);
      ++count;
    }
    if (dq[o] <= kd[o]) {
      sum += std::max(kd_query, dq[o]);
      ++count;
    }
    return static_cast<double>(count) / std::max(sum, kDensityFloor);
  };

  double reach_sum = 0.0;
  double density_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t o = 0; o < n; ++o) {
    if (dq[o] > kd_query) continue;
    reach_sum += std::max(kd[o], dq[o]);
    density_sum += lrd(o);
    ++count;
  }
  const double lrd_query = static_cast<double>(count) / std::max(reach_sum, kDensityFloor);
  return density_sum / static_cast<double>(count) / lrd_query;
}

ScoreSeries lof_score(const LofModel& model, const WindowFrame& test) {
  ScoreSeries out;
  out.detector_name = "lof";
  out.indices = test.target_indices;
  out.scores.reserve(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) out.scores.push_back(lof_score(model, test.window(i)));
  return out;
}

}  // namespace tsad
