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

#include "tsad/error.hpp"
#include "tsad/statistical.hpp"

namespace tsad {
namespace {

void check_parameters(int k, double alpha) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "PCI half-window k must be >= 1");
  if (!(alpha > 50.0 && alpha < 100.0)) {
    fail(ErrorCode::kInvalidArgument, "PCI alpha must lie in (50, 100), got " +
                                          std::to_string(alpha));
  }
}

// Inverse-distance weighted estimate at t; causal uses x_{t-1..t-2k}.
double estimate(std::span<const double> x, std::size_t t, int k, bool two_sided) {
  double num = 0.0;
  double den = 0.0;
  if (two_sided) {
    for (int j = 1; j <= k; ++j) {
      const double w = 1.0 / j;
      num += w * (x[t - j] + x[t + j]);
      den += 2.0 * w;
    }
  } else {
    for (int j = 1; j <= 2 * k; ++j) {
      const double w = 1.0 / j;
      num += w * x[t - j];
      den += w;
    }
  }
  return num / den;
}

Forecast forecast_values(std::span<const double> x, int k, bool two_sided) {
  Forecast out;
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t begin = two_sided ? kk : 2 * kk;
  const std::size_t end = two_sided ? (x.size() > kk ? x.size() - kk : 0) : x.size();
  for (std::size_t t = begin; t < end; ++t) {
    out.predictions.push_back(estimate(x, t, k, two_sided));
    out.indices.push_back(t);
  }
  return out;
}

}  // namespace

PciFit pci_fit(const TimeSeries& train, int k, double alpha, bool two_sided) {
  check_parameters(k, alpha);
  const auto x = train.values();
  const Forecast f = forecast_values(x, k, two_sided);
  if (f.indices.size() < 2) {
    fail(ErrorCode::kSeriesTooShort, "PCI needs more than 2k + 1 training points");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < f.indices.size(); ++i) mean += x[f.indices[i]] - f.predictions[i];
  mean /= static_cast<double>(f.indices.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < f.indices.size(); ++i) {
    const double r = x[f.indices[i]] - f.predictions[i] - mean;
    ss += r * r;
  }
  PciFit fit;
  fit.k = k;
  fit.alpha = alpha;
  fit.two_sided = two_sided;
  fit.residual_s = std::sqrt(ss / static_cast<double>(f.indices.size() - 1));
  // A perfectly predictable training segment leaves no spread to scale by.
  if (!(fit.residual_s > 1e-12)) fit.residual_s = 1e-12;
  fit.t_quantile = student_t_quantile(alpha / 100.0, 2.0 * k - 1.0);
  fit.half_width = fit.t_quantile * fit.residual_s * std::sqrt(1.0 + 1.0 / (2.0 * k));
  return fit;
}

Forecast pci_forecast(const PciFit& fit, const TimeSeries& test) {
  return forecast_values(test.values(), fit.k, fit.two_sided);
}

ScoreSeries pci_score(const PciFit& fit, const TimeSeries& test) {
  const auto needed = static_cast<std::size_t>(2 * fit.k);
  if (test.size() <= needed) {
    fail(ErrorCode::kSeriesTooShort, "PCI scoring needs more than 2k test points");
  }
  ScoreSeries out = absolute_residuals(test, pci_forecast(fit, test), "pci");
  for (double& s : out.scores) s /= fit.half_width;
  return out;
}

ScoreSeries pci_score(const TimeSeries& train, const TimeSeries& test, int k, double alpha) {
  return pci_score(pci_fit(train, k, alpha), test);
}

}  // namespace tsad
