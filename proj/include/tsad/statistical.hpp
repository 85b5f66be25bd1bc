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

#ifndef TSAD_STATISTICAL_HPP
#define TSAD_STATISTICAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "tsad/detector.hpp"
#include "tsad/types.hpp"

namespace tsad {

/// Maximal autoregressive lag for a training segment of n points:
/// floor(12 * (n / 100)^(1/4)).
int lag_cap(std::size_t n);

/// Forecast residuals turned into a ScoreSeries: |x_t - prediction_t|.
ScoreSeries absolute_residuals(const TimeSeries& test, const Forecast& forecast,
                               const std::string& detector_name);

// ---------------------------------------------------------------------------
// Autoregressive family

struct ArFit {
  int p = 1;
  std::vector<double> coefficients;  // a_1..a_p
  double intercept = 0.0;
  double residual_sigma = 0.0;
};

/// Conditional least squares over t in [p, N): minimises
/// sum (x_t - c - sum_i a_i x_{t-i})^2. Throws kOrderTooLarge when p exceeds
/// lag_cap(N), kSingularDesign for a rank-deficient design.
ArFit ar_fit(const TimeSeries& train, int p);
/// One-step forecasts for t >= p, rolling over the observed past.
Forecast ar_forecast(const ArFit& fit, const TimeSeries& test);
ScoreSeries ar_score(const ArFit& fit, const TimeSeries& test);

struct ArmaFit {
  int p = 0;
  int q = 0;
  std::vector<double> ar;  // a_1..a_p
  std::vector<double> ma;  // b_1..b_q
  double intercept = 0.0;
  double residual_sigma = 0.0;
  double css = 0.0;
  int iterations = 0;
  bool converged = true;
};

struct CssOptions {
  int max_iterations = 500;
  double tolerance = 1e-8;
};

/// Hannan-Rissanen start (long AR residuals, then OLS on lags of x and of the
/// residuals) refined by Levenberg-Marquardt on the conditional sum of squares.
/// A run that hits the iteration cap returns its best iterate with
/// `converged == false`.
ArmaFit arma_fit(const TimeSeries& train, int p, int q, const CssOptions& options = {});
Forecast arma_forecast(const ArmaFit& fit, std::span<const double> values);

struct MaFit {
  int q = 1;
  std::vector<double> coefficients;  // b_1..b_q
  double mu = 0.0;
  int long_ar_order = 1;
  double residual_sigma = 0.0;
  bool converged = true;
};

MaFit ma_fit(const TimeSeries& train, int q, const CssOptions& options = {});
/// Runs e_t = x_t - (mu + sum b_i e_{t-i}) from e = 0; scores every index.
Forecast ma_forecast(const MaFit& fit, const TimeSeries& test);
ScoreSeries ma_score(const MaFit& fit, const TimeSeries& test);

struct ArimaFit {
  int d = 0;
  ArmaFit inner;
};

/// difference(d) followed by arma_fit. Throws kInvalidOrder unless d in {0,1,2}.
ArimaFit arima_fit(const TimeSeries& train, int p, int d, int q,
                   const CssOptions& options = {});
/// The first d test points seed the differencing and are not scored.
Forecast arima_forecast(const ArimaFit& fit, const TimeSeries& test);
ScoreSeries arima_score(const ArimaFit& fit, const TimeSeries& test);

/// 1 when an OLS line over `train` has |slope| * N > 2 * residual sigma.
int detect_trend_order(const TimeSeries& train);

// ---------------------------------------------------------------------------
// Exponential smoothing

struct SmoothingFit {
  double alpha = 0.5;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<int> season_period;
  double level = 0.0;
  double trend = 0.0;
  std::vector<double> season;
  double sse = 0.0;
};

// Fixed smoothing parameters; unset ones are searched on the grid.
struct SmoothingSearch {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
};

/// Grid search over {0.01, ..., 0.99} per smoothing parameter minimising the
/// in-sample one-step SSE.
SmoothingFit ses_fit(const TimeSeries& train, const SmoothingSearch& search = {});
SmoothingFit holt_fit(const TimeSeries& train, const SmoothingSearch& search = {});
/// Throws kPeriodTooLong unless period >= 2 and N >= 2 * period.
SmoothingFit holtwinters_fit(const TimeSeries& train, int period,
                             const SmoothingSearch& search = {});

/// In-sample one-step SSE of the recursion with the given parameters.
double smoothing_sse(std::span<const double> values, double alpha,
                     std::optional<double> beta, std::optional<double> gamma,
                     std::optional<int> period);

/// Re-initialises the state on the head of `test` (1 point for SES, 2 for
/// Holt, one season for Holt-Winters) and forecasts the remainder.
Forecast smoothing_forecast(const SmoothingFit& fit, const TimeSeries& test);
ScoreSeries smoothing_score(const SmoothingFit& fit, const TimeSeries& test);

// ---------------------------------------------------------------------------
// Prediction confidence interval

struct PciFit {
  int k = 30;
  double alpha = 98.5;  // percentile, in (50, 100)
  double residual_s = 1.0;
  double t_quantile = 0.0;
  double half_width = 0.0;
  bool two_sided = false;
};

/// Estimates the residual standard deviation of the inverse-distance-weighted
/// predictor on `train` and the interval half-width
/// t_{alpha, 2k-1} * s * sqrt(1 + 1/(2k)).
PciFit pci_fit(const TimeSeries& train, int k = 30, double alpha = 98.5,
               bool two_sided = false);
/// Causal form: xhat_t = sum_{j=1..2k} x_{t-j}/j / sum 1/j for t >= 2k.
/// Two-sided form: weights 1/j on x_{t-j} and x_{t+j}, j = 1..k.
Forecast pci_forecast(const PciFit& fit, const TimeSeries& test);
/// |x_t - xhat_t| / half_width, so a score above 1 lies outside the band.
ScoreSeries pci_score(const PciFit& fit, const TimeSeries& test);
ScoreSeries pci_score(const TimeSeries& train, const TimeSeries& test, int k = 30,
                      double alpha = 98.5);

/// Quantile of Student's t with `dof` degrees of freedom at probability p,
/// by bisection on the incomplete-beta CDF to 1e-10.
double student_t_quantile(double p, double dof);
double student_t_cdf(double t, double dof);
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace tsad

#endif  // TSAD_STATISTICAL_HPP
