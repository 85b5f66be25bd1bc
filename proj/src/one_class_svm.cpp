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
namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::exp(-gamma * s);
}

}  // namespace

OcSvmModel ocsvm_fit(const WindowFrame& train, const OcSvmOptions& options) {
  const std::size_t m = train.rows();
  if (m < 2) fail(ErrorCode::kTooFewWindows, "one-class SVM needs at least 2 windows");
  if (!(options.nu > 0.0 && options.nu <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "nu must lie in (0, 1]");
  }
  if (options.gamma < 0.0) fail(ErrorCode::kInvalidArgument, "RBF gamma must be positive");
  OcSvmModel model;
  model.width = train.width;
  model.nu = options.nu;
  model.gamma = options.gamma > 0.0 ? options.gamma : 1.0 / static_cast<double>(train.width);

  std::vector<double> q(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    q[i * m + i] = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double k = rbf(train.window(i), train.window(j), model.gamma);
      q[i * m + j] = k;
      q[j * m + i] = k;
    }
  }

  // Feasible start: the first floor(nu m) coefficients at the bound C and the
  // remainder on the next one, so the coefficients sum to 1.
  const double c = 1.0 / (options.nu * static_cast<double>(m));
  std::vector<double> alpha(m, 0.0);
  double left = 1.0;
  for (std::size_t i = 0; i < m && left > 0.0; ++i) {
    alpha[i] = std::min(c, left);
    left -= alpha[i];
  }
  std::vector<double> grad(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (alpha[i] == 0.0) continue;
    for (std::size_t j = 0; j < m; ++j) grad[j] += q[j * m + i] * alpha[i];
  }

  // Maximal violating pair: i can grow (alpha < C), j can shrink (alpha > 0).
  const double tiny = 1e-15 * c;
  model.converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    std::size_t up = m, low = m;
    double g_up = std::numeric_limits<double>::infinity();
    double g_low = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < m; ++t) {
      if (alpha[t] < c - tiny && grad[t] < g_up) {
        g_up = grad[t];
        up = t;
      }
      if (alpha[t] > tiny && grad[t] > g_low) {
        g_low = grad[t];
        low = t;
      }
    }
    model.iterations = it;
    if (up == m || low == m || g_low - g_up < options.tolerance) {
      model.converged = true;
      break;
    }
    const std::size_t i = up, j = low;
    const double curvature = std::max(q[i * m + i] + q[j * m + j] - 2.0 * q[i * m + j], 1e-12);
    double delta = (g_low - g_up) / curvature;
    delta = std::min({delta, c - alpha[i], alpha[j]});
    alpha[i] += delta;
    alpha[j] -= delta;
    for (std::size_t t = 0; t < m; ++t) grad[t] += delta * (q[t * m + i] - q[t * m + j]);
  }

  // rho: mean gradient over free coefficients, else the midpoint of the bounds.
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < m; ++t) {
    if (alpha[t] > tiny && alpha[t] < c - tiny) {
      free_sum += grad[t];
      ++free_count;
    } else if (alpha[t] <= tiny) {
      ub = std::min(ub, grad[t]);
    } else {
      lb = std::max(lb, grad[t]);
    }
  }
  if (free_count > 0) {
    model.rho = free_sum / static_cast<double>(free_count);
  } else {
    if (!std::isfinite(ub)) ub = lb;
    if (!std::isfinite(lb)) lb = ub;
    model.rho = 0.5 * (ub + lb);
  }

  for (std::size_t t = 0; t < m; ++t) {
    if (alpha[t] <= 0.0) continue;
    const auto row = train.window(t);
    model.support_vectors.insert(model.support_vectors.end(), row.begin(), row.end());
    model.dual_coeffs.push_back(alpha[t]);
  }
  return model;
}

double ocsvm_decision(const OcSvmModel& model, std::span<const double> x) {
  if (x.size() != model.width) fail(ErrorCode::kDimensionMismatch, "OC-SVM width mismatch");
  double s = 0.0;
  for (std::size_t t = 0; t < model.dual_coeffs.size(); ++t) {
    std::span<const double> sv(model.support_vectors.data() + t * model.width, model.width);
    s += model.dual_coeffs[t] * rbf(sv, x, model.gamma);
  }
  return s - model.rho;
}

ScoreSeries ocsvm_score(const OcSvmModel& model, const WindowFrame& test) {
  ScoreSeries out;
  out.detector_name = "ocsvm";
  out.indices = test.target_indices;
  out.scores.reserve(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) {
    out.scores.push_back(-ocsvm_decision(model, test.window(i)));
  }
  return out;
}

}  // namespace tsad
