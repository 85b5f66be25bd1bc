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
#include "tsad/statistical.hpp"

namespace tsad {
namespace {

constexpr int kGridSize = 99;  // 0.01, 0.02, ..., 0.99

double grid_value(int i) { return (i + 1) / 100.0; }

struct State {
  double level = 0.0;
  double trend = 0.0;
  std::vector<double> season;
  std::size_t start = 0;  // first index forecast from this state
};

double mean_of(std::span<const double> x, std::size_t b, std::size_t e) {
  double s = 0.0;
  for (std::size_t i = b; i < e; ++i) s += x[i];
  return s / static_cast<double>(e - b);
}

// Seasonal state from one period starting at `b`, given a trend estimate.
// The level refers to the last point of the period.
State seasonal_state(std::span<const double> x, std::size_t b, int period, double trend) {
  const auto p = static_cast<std::size_t>(period);
  const double centre = 0.5 * static_cast<double>(p - 1);
  const double m = mean_of(x, b, b + p);
  State s;
  s.trend = trend;
  s.level = m + trend * centre;
  s.season.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    s.season[(b + i) % p] = x[b + i] - (m + trend * (static_cast<double>(i) - centre));
  }
  s.start = b + p;
  return s;
}

State initial_state(std::span<const double> x, bool has_trend, std::optional<int> period) {
  if (period) {
    const auto p = static_cast<std::size_t>(*period);
    const double trend = (mean_of(x, p, 2 * p) - mean_of(x, 0, p)) / static_cast<double>(p);
    return seasonal_state(x, 0, *period, trend);
  }
  State s;
  s.level = x[0];
  s.start = 1;
  if (has_trend) {
    s.level = x[1];
    s.trend = x[1] - x[0];
    s.start = 2;
  }
  return s;
}

// Rolls `state` through x[state.start..]; returns the one-step SSE, or stops
// early once it exceeds `bound`. Predictions are appended when requested.
double run(std::span<const double> x, State& state, double alpha, std::optional<double> beta,
           std::optional<double> gamma, double bound, Forecast* out) {
  const bool seasonal = !state.season.empty();
  const std::size_t p = state.season.size();
  double sse = 0.0;
  for (std::size_t t = state.start; t < x.size(); ++t) {
    const double s = seasonal ? state.season[t % p] : 0.0;
    const double pred = state.level + state.trend + s;
    const double err = x[t] - pred;
    sse += err * err;
    if (sse > bound) return sse;
    if (out) {
      out->predictions.push_back(pred);
      out->indices.push_back(t);
    }
    const double prev_level = state.level;
    state.level = alpha * (x[t] - s) + (1.0 - alpha) * (state.level + state.trend);
    if (beta) state.trend = *beta * (state.level - prev_level) + (1.0 - *beta) * state.trend;
    if (seasonal) state.season[t % p] = *gamma * (x[t] - state.level) + (1.0 - *gamma) * s;
  }
  return sse;
}

SmoothingFit finish(std::span<const double> x, double alpha, std::optional<double> beta,
                    std::optional<double> gamma, std::optional<int> period) {
  State state = initial_state(x, beta.has_value(), period);
  SmoothingFit fit;
  fit.alpha = alpha;
  fit.beta = beta;
  fit.gamma = gamma;
  fit.season_period = period;
  fit.sse = run(x, state, alpha, beta, gamma, std::numeric_limits<double>::infinity(), nullptr);
  fit.level = state.level;
  fit.trend = state.trend;
  fit.season = std::move(state.season);
  return fit;
}

std::vector<double> candidates(std::optional<double> fixed) {
  if (fixed) {
    if (!(*fixed >= 0.0 && *fixed <= 1.0)) {
      fail(ErrorCode::kInvalidArgument, "smoothing parameters must lie in [0, 1]");
    }
    return {*fixed};
  }
  std::vector<double> grid(kGridSize);
  for (int i = 0; i < kGridSize; ++i) grid[i] = grid_value(i);
  return grid;
}

// Exhaustive search; an empty list leaves that component out of the model.
// Each candidate run is abandoned once its SSE passes the best so far.
SmoothingFit search_grid(std::span<const double> x, const std::vector<double>& alphas,
                         const std::vector<double>& betas, const std::vector<double>& gammas,
                         std::optional<int> period) {
  const bool trend = !betas.empty();
  const State init = initial_state(x, trend || period.has_value(), period);
  const std::vector<double> none = {0.0};
  double best = std::numeric_limits<double>::infinity();
  double ba = alphas[0];
  double bb = trend ? betas[0] : 0.0;
  double bg = period ? gammas[0] : 0.0;
  for (double a : alphas) {
    for (double b : trend ? betas : none) {
      for (double g : period ? gammas : none) {
        State s = init;
        const double sse = run(x, s, a, trend ? std::optional<double>(b) : std::nullopt,
                               period ? std::optional<double>(g) : std::nullopt, best, nullptr);
        if (sse < best) {
          best = sse;
          ba = a;
          bb = b;
          bg = g;
        }
      }
    }
  }
  return finish(x, ba, trend ? std::optional<double>(bb) : std::nullopt,
                period ? std::optional<double>(bg) : std::nullopt, period);
}

}  // namespace

double smoothing_sse(std::span<const double> values, double alpha, std::optional<double> beta,
                     std::optional<double> gamma, std::optional<int> period) {
  if (gamma.has_value() != period.has_value()) {
    fail(ErrorCode::kInvalidArgument, "gamma and season period go together");
  }
  State state = initial_state(values, beta.has_value(), period);
  return run(values, state, alpha, beta, gamma, std::numeric_limits<double>::infinity(), nullptr);
}

SmoothingFit ses_fit(const TimeSeries& train, const SmoothingSearch& search) {
  const auto x = train.values();
  if (x.size() < 2) fail(ErrorCode::kSeriesTooShort, "SES needs at least 2 points");
  return search_grid(x, candidates(search.alpha), {}, {}, std::nullopt);
}

SmoothingFit holt_fit(const TimeSeries& train, const SmoothingSearch& search) {
  const auto x = train.values();
  if (x.size() < 3) fail(ErrorCode::kSeriesTooShort, "Holt smoothing needs at least 3 points");
  return search_grid(x, candidates(search.alpha), candidates(search.beta), {}, std::nullopt);
}

SmoothingFit holtwinters_fit(const TimeSeries& train, int period, const SmoothingSearch& search) {
  if (period < 2) fail(ErrorCode::kInvalidPeriod, "Holt-Winters period must be >= 2");
  const auto x = train.values();
  if (x.size() < 2 * static_cast<std::size_t>(period)) {
    fail(ErrorCode::kPeriodTooLong, "Holt-Winters needs two full seasons: period " +
                                        std::to_string(period) + ", " +
                                        std::to_string(x.size()) + " points");
  }
  return search_grid(x, candidates(search.alpha), candidates(search.beta),
                     candidates(search.gamma), period);
}

Forecast smoothing_forecast(const SmoothingFit& fit, const TimeSeries& test) {
  const auto x = test.values();
  Forecast out;
  State state;
  if (fit.season_period) {
    const auto p = static_cast<std::size_t>(*fit.season_period);
    if (x.size() <= p) return out;
    state = seasonal_state(x, 0, *fit.season_period, fit.trend);
  } else {
    const std::size_t head = fit.beta ? 2 : 1;
    if (x.size() <= head) return out;
    state = initial_state(x, fit.beta.has_value(), std::nullopt);
  }
  run(x, state, fit.alpha, fit.beta, fit.gamma, std::numeric_limits<double>::infinity(), &out);
  return out;
}

ScoreSeries smoothing_score(const SmoothingFit& fit, const TimeSeries& test) {
  const char* name = fit.season_period ? "holtwinters" : (fit.beta ? "holt" : "ses");
  return absolute_residuals(test, smoothing_forecast(fit, test), name);
}

}  // namespace tsad
