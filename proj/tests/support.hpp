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

// Shared fixtures for the unit tests.

#ifndef TSAD_TESTS_SUPPORT_HPP
#define TSAD_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/types.hpp"

namespace tsad::testing {

// x_t = sum a_i x_{t-i} + sigma * e_t after a 200-step burn-in.
inline std::vector<double> simulate_ar(const std::vector<double>& a, double sigma,
                                       std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  const std::size_t burn = 200;
  std::vector<double> x(n + burn, 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    double v = noise(rng);
    for (std::size_t i = 0; i < a.size() && i < t; ++i) v += a[i] * x[t - 1 - i];
    x[t] = v;
  }
  return {x.begin() + static_cast<std::ptrdiff_t>(burn), x.end()};
}

// x_t = e_t + sum b_j e_{t-j}.
inline std::vector<double> simulate_ma(const std::vector<double>& b, double sigma,
                                       std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> e(n + b.size());
  for (auto& v : e) v = noise(rng);
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t s = t + b.size();
    x[t] = e[s];
    for (std::size_t j = 0; j < b.size(); ++j) x[t] += b[j] * e[s - 1 - j];
  }
  return x;
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> x(n);
  for (auto& v : x) v = noise(rng);
  return x;
}

// Row-major frame of arbitrary points; targets are zeros.
inline WindowFrame points_frame(const std::vector<std::vector<double>>& rows) {
  WindowFrame f;
  f.width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    f.data.insert(f.data.end(), rows[i].begin(), rows[i].end());
    f.targets.push_back(0.0);
    f.target_indices.push_back(i);
  }
  return f;
}

inline ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace tsad::testing

#endif  // TSAD_TESTS_SUPPORT_HPP
