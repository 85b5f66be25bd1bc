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

// Synthetic series with known anomalies. The generating processes are
// desk-scale stand-ins; only their labeled-anomaly guarantees are contractual.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tsad/dataset.hpp"
#include "tsad/error.hpp"
#include "tsad/key_value.hpp"

namespace tsad {
namespace {

bool is_stationary(const std::vector<double>& coeffs) {
  const auto p = static_cast<Eigen::Index>(coeffs.size());
  if (p == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = coeffs[j];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  // Companion eigenvalues are the reciprocals of the characteristic roots.
  return (solver.eigenvalues().array().abs() < 1.0).all();
}

double sample_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() > 1 ? v.size() - 1 : 1));
}

std::vector<double> base_series(const SynthSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  std::vector<double> x(spec.length);
  switch (spec.base) {
    case SynthBase::kArProcess: {
      const auto& a = spec.ar_coeffs;
      const std::size_t burn_in = 200;
      std::vector<double> buf(spec.length + burn_in, 0.0);
      for (std::size_t t = 0; t < buf.size(); ++t) {
        double v = noise(rng);
        for (std::size_t i = 0; i < a.size() && i < t; ++i) v += a[i] * buf[t - 1 - i];
        buf[t] = v;
      }
      std::copy(buf.begin() + burn_in, buf.end(), x.begin());
      break;
    }
    case SynthBase::kSineSeasonal: {
      const double period = spec.season_period.value_or(50);
      std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
      const double phase = phase_dist(rng);
      for (std::size_t t = 0; t < spec.length; ++t) {
        x[t] = spec.amplitude *
                   std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period + phase) +
               noise(rng);
      }
      break;
    }
    case SynthBase::kTrendPlusNoise: {
      for (std::size_t t = 0; t < spec.length; ++t) {
        x[t] = spec.trend_slope * static_cast<double>(t) + noise(rng);
      }
      break;
    }
  }
  return x;
}

void validate(const SynthSpec& spec) {
  if (spec.length < 2) fail(ErrorCode::kInvalidSpec, "length must be >= 2");
  if (!(spec.anomaly_rate > 0.0 && spec.anomaly_rate < 1.0)) {
    fail(ErrorCode::kInvalidSpec, "anomaly_rate must lie in (0, 1)");
  }
  if (spec.anomaly_rate * static_cast<double>(spec.length) < 1.0) {
    fail(ErrorCode::kInvalidSpec, "anomaly_rate * length must be >= 1");
  }
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    fail(ErrorCode::kInvalidSpec, "noise_sigma must be finite and >= 0");
  }
  if (spec.base == SynthBase::kArProcess && !is_stationary(spec.ar_coeffs)) {
    fail(ErrorCode::kInvalidSpec, "ar_coeffs do not define a stationary process");
  }
  if (spec.season_period && *spec.season_period < 2) {
    fail(ErrorCode::kInvalidSpec, "season_period must be >= 2");
  }
}

}  // namespace

SynthResult generate_synthetic_detailed(const SynthSpec& input) {
  SynthSpec spec = input;
  if (spec.base == SynthBase::kArProcess && spec.ar_coeffs.empty()) spec.ar_coeffs = {0.5};
  validate(spec);

  std::mt19937_64 rng(spec.seed);
  std::vector<double> clean = base_series(spec, rng);
  std::vector<double> values = clean;
  std::vector<Label> labels(spec.length, 0);

  const auto count = static_cast<std::size_t>(
      std::llround(spec.anomaly_rate * static_cast<double>(spec.length)));
  const double sd = std::max(sample_std(clean), 1e-12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_sign = [&] { return unit(rng) < 0.5 ? -1.0 : 1.0; };

  // Keep the first few points clean so every series has a normal lead-in.
  const std::size_t lead = std::min<std::size_t>(spec.length / 20, 10);
  std::vector<std::size_t> injected;

  switch (spec.anomaly_kind) {
    case AnomalyKind::kPoint: {
      std::vector<std::size_t> candidates(spec.length - lead);
      for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = lead + i;
      if (candidates.size() < count) fail(ErrorCode::kInvalidSpec, "too many anomalies for length");
      // Partial Fisher-Yates keeps the draw deterministic and duplicate-free.
      for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
        std::swap(candidates[i], candidates[pick(rng)]);
        const std::size_t idx = candidates[i];
        values[idx] = clean[idx] + random_sign() * (6.0 + 2.0 * unit(rng)) * sd;
        injected.push_back(idx);
      }
      break;
    }
    case AnomalyKind::kCollective: {
      const std::size_t seg = std::min<std::size_t>(count, 10);
      std::size_t remaining = count;
      std::size_t attempts = 0;
      while (remaining > 0) {
        const std::size_t len = std::min(seg, remaining);
        if (spec.length < lead + len + 1) fail(ErrorCode::kInvalidSpec, "series too short");
        std::uniform_int_distribution<std::size_t> pick(lead, spec.length - len);
        const std::size_t start = pick(rng);
        bool overlap = false;
        for (std::size_t i = start; i < start + len; ++i) overlap = overlap || labels[i];
        if (overlap) {
          if (++attempts > 10000) fail(ErrorCode::kInvalidSpec, "cannot place collective anomalies");
          continue;
        }
        const double shift = random_sign() * (3.0 + unit(rng)) * sd;
        for (std::size_t i = start; i < start + len; ++i) {
          values[i] = clean[i] + shift;
          labels[i] = 1;
          injected.push_back(i);
        }
        remaining -= len;
      }
      break;
    }
    case AnomalyKind::kChangepoint: {
      if (spec.length < lead + count + 1) fail(ErrorCode::kInvalidSpec, "series too short");
      std::uniform_int_distribution<std::size_t> pick(lead + 1, spec.length - count);
      const std::size_t change = pick(rng);
      const double shift = random_sign() * (3.0 + unit(rng)) * sd;
      // The level shift persists; the trailing window after it is labeled.
      for (std::size_t i = change; i < spec.length; ++i) values[i] = clean[i] + shift;
      for (std::size_t i = change; i < change + count; ++i) injected.push_back(i);
      break;
    }
  }
  std::sort(injected.begin(), injected.end());
  for (std::size_t i : injected) labels[i] = 1;

  std::optional<int> period;
  if (spec.base == SynthBase::kSineSeasonal) period = spec.season_period.value_or(50);
  std::string id = spec.series_id.empty() ? "synth_" + std::to_string(spec.seed) : spec.series_id;
  return SynthResult{TimeSeries(std::move(values), std::move(labels), id, period),
                     std::move(clean), std::move(injected)};
}

TimeSeries generate_synthetic(const SynthSpec& spec) {
  return generate_synthetic_detailed(spec).series;
}

SynthSpec parse_synth_spec(const std::string& text) {
  SynthSpec spec;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "length") {
      const long n = parse_long(value, key);
      if (n < 0) fail(ErrorCode::kInvalidSpec, "length must be positive");
      spec.length = static_cast<std::size_t>(n);
    } else if (key == "base") {
      if (value == "ar_process") spec.base = SynthBase::kArProcess;
      else if (value == "sine_seasonal") spec.base = SynthBase::kSineSeasonal;
      else if (value == "trend_plus_noise") spec.base = SynthBase::kTrendPlusNoise;
      else fail(ErrorCode::kInvalidSpec, "unknown base '" + value + "'");
    } else if (key == "anomaly_rate") {
      spec.anomaly_rate = parse_double(value, key);
    } else if (key == "anomaly_kind") {
      if (value == "point") spec.anomaly_kind = AnomalyKind::kPoint;
      else if (value == "collective") spec.anomaly_kind = AnomalyKind::kCollective;
      else if (value == "changepoint") spec.anomaly_kind = AnomalyKind::kChangepoint;
      else fail(ErrorCode::kInvalidSpec, "unknown anomaly_kind '" + value + "'");
    } else if (key == "seed") {
      spec.seed = std::stoull(trim(value));
    } else if (key == "ar_coeffs") {
      spec.ar_coeffs.clear();
      for (const auto& c : split(value, ',')) spec.ar_coeffs.push_back(parse_double(c, key));
    } else if (key == "season_period") {
      spec.season_period = static_cast<int>(parse_long(value, key));
    } else if (key == "noise_sigma") {
      spec.noise_sigma = parse_double(value, key);
    } else if (key == "amplitude") {
      spec.amplitude = parse_double(value, key);
    } else if (key == "trend_slope") {
      spec.trend_slope = parse_double(value, key);
    } else if (key == "series_id") {
      spec.series_id = value;
    } else {
      fail(ErrorCode::kInvalidSpec, "unknown synth spec key '" + key + "'");
    }
  }
  return spec;
}

std::vector<SynthSpec> smoke_specs(std::size_t count, std::uint64_t seed) {
  std::vector<SynthSpec> specs;
  for (std::size_t i = 0; i < count; ++i) {
    SynthSpec s;
    s.length = 800;
    s.anomaly_rate = 0.01;
    s.anomaly_kind = AnomalyKind::kPoint;
    s.seed = seed * 1000003ULL + i;
    // Low observation noise keeps same-phase windows dense enough for DBSCAN.
    s.base = SynthBase::kSineSeasonal;
    s.season_period = i % 2 == 0 ? 20 : 25;
    s.noise_sigma = 0.02;
    s.series_id = "synth_" + std::to_string(i);
    specs.push_back(s);
  }
  return specs;
}

}  // namespace tsad
