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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "linear_regression.hpp"
#include "tsad/error.hpp"
#include "tsad/preprocessing.hpp"
#include "tsad/statistical.hpp"

namespace tsad {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Moving-average parts are kept strictly inside the invertible region.
constexpr double kMaxMaRadius = 0.999;

// Rows t in [start, N): [1, x_{t-1}, ..., x_{t-p}] -> x_t.
void lagged_design(std::span<const double> x, int p, std::size_t start, MatrixXd& design,
                   VectorXd& target) {
  const auto rows = static_cast<Index>(x.size() - start);
  design.resize(rows, p + 1);
  target.resize(rows);
  for (Index r = 0; r < rows; ++r) {
    const std::size_t t = start + static_cast<std::size_t>(r);
    design(r, 0) = 1.0;
    for (int i = 1; i <= p; ++i) design(r, i) = x[t - i];
    target(r) = x[t];
  }
}

// Residuals of an OLS AR(order) fit; zero before the first full lag window.
std::vector<double> long_ar_residuals(std::span<const double> x, int order) {
  MatrixXd design;
  VectorXd target;
  lagged_design(x, order, static_cast<std::size_t>(order), design, target);
  const auto ols = detail::least_squares(design, target);
  std::vector<double> resid(x.size(), 0.0);
  const VectorXd r = target - design * ols.beta;
  for (Index i = 0; i < r.size(); ++i) resid[static_cast<std::size_t>(order) + i] = r(i);
  return resid;
}

// theta = [c, a_1..a_p, b_1..b_q]. Residuals for t >= p; e_t = 0 before.
// Returns +inf when the recursion blows up.
double css_residuals(std::span<const double> x, int p, int q, const VectorXd& theta,
                     std::vector<double>& e) {
  const std::size_t n = x.size();
  e.assign(n, 0.0);
  double css = 0.0;
  for (std::size_t t = static_cast<std::size_t>(p); t < n; ++t) {
    double pred = theta(0);
    for (int i = 1; i <= p; ++i) pred += theta(i) * x[t - i];
    for (int j = 1; j <= q && static_cast<std::size_t>(j) <= t; ++j) {
      pred += theta(p + j) * e[t - j];
    }
    e[t] = x[t] - pred;
    if (!std::isfinite(e[t])) return std::numeric_limits<double>::infinity();
    css += e[t] * e[t];
  }
  if (!std::isfinite(css)) return std::numeric_limits<double>::infinity();
  return css;
}

// Gauss-Newton normal equations J'J and J'e for the residual recursion.
// Every derivative series obeys d_t = z_t - sum_l b_l d_{t-l} (zero before
// t = p). For b_j the input is -e_{t-j}, so its column is the single filtered
// series u = filter(-e) shifted by j and the b-block reduces to lagged
// products of u.
void normal_equations(std::span<const double> x, int p, int q, const VectorXd& theta,
                      const std::vector<double>& e, MatrixXd& jtj, VectorXd& jte) {
  const std::size_t n = x.size();
  const auto start = static_cast<std::size_t>(p);
  const Index k = 1 + p + q;
  const auto filtered = [&](auto&& input) {
    std::vector<double> y(n, 0.0);
    for (std::size_t t = start; t < n; ++t) {
      double v = input(t);
      for (int l = 1; l <= q && static_cast<std::size_t>(l) <= t; ++l) {
        v -= theta(p + l) * y[t - l];
      }
      y[t] = v;
    }
    return y;
  };
  std::vector<std::vector<double>> dense;
  dense.push_back(filtered([](std::size_t) { return -1.0; }));
  for (int i = 1; i <= p; ++i) {
    dense.push_back(filtered([&](std::size_t t) { return -x[t - i]; }));
  }
  const std::vector<double> u = filtered([&](std::size_t t) { return -e[t]; });
  const auto shifted = [&](std::size_t t, int j) {
    return t >= static_cast<std::size_t>(j) ? u[t - j] : 0.0;
  };

  jtj = MatrixXd::Zero(k, k);
  jte = VectorXd::Zero(k);
  const auto d = static_cast<Index>(dense.size());
  for (std::size_t t = start; t < n; ++t) {
    for (Index a = 0; a < d; ++a) {
      const double va = dense[a][t];
      jte(a) += va * e[t];
      for (Index b = 0; b <= a; ++b) jtj(a, b) += va * dense[b][t];
      for (int j = 1; j <= q; ++j) jtj(p + j, a) += va * shifted(t, j);
    }
  }
  for (int j = 1; j <= q; ++j) {
    double g = 0.0;
    for (std::size_t t = start; t < n; ++t) g += shifted(t, j) * e[t];
    jte(p + j) = g;
  }
  // sum_{t=p}^{n-1} u_{t-j} u_{t-j-h} equals prefix_h(n-1-j), since u
  // vanishes before p.
  std::vector<double> prefix(n);
  for (int h = 0; h < q; ++h) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (s >= static_cast<std::size_t>(h)) acc += u[s] * u[s - h];
      prefix[s] = acc;
    }
    for (int j = 1; j + h <= q; ++j) {
      const auto m = static_cast<std::ptrdiff_t>(n) - 1 - j;
      jtj(p + j + h, p + j) = m >= 0 ? prefix[static_cast<std::size_t>(m)] : 0.0;
    }
  }
  jtj.triangularView<Eigen::StrictlyUpper>() = jtj.transpose();
}

// Largest modulus among the inverse roots of 1 + b_1 z + ... + b_q z^q, i.e.
// the eigenvalues of the companion matrix. Below 1 means invertible.
double ma_spectral_radius(const double* b, int q) {
  if (q == 0) return 0.0;
  MatrixXd companion = MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) companion(0, i) = -b[i];
  for (int i = 1; i < q; ++i) companion(i, i - 1) = 1.0;
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

// Schur-Cohn step-down test: true when every root of
// z^q + b_1 z^(q-1) + ... + b_q lies strictly inside |z| < radius.
bool ma_within_radius(const double* b, int q, double radius) {
  std::vector<double> a(static_cast<std::size_t>(q));
  double scale = 1.0;
  for (int j = 0; j < q; ++j) {
    scale *= radius;
    a[static_cast<std::size_t>(j)] = b[j] / scale;
  }
  std::vector<double> prev(a.size());
  for (int m = q; m >= 1; --m) {
    const double k = a[static_cast<std::size_t>(m - 1)];
    if (!std::isfinite(k) || std::abs(k) >= 1.0) return false;
    const double denom = 1.0 - k * k;
    for (int j = 1; j < m; ++j) {
      prev[static_cast<std::size_t>(j - 1)] =
          (a[static_cast<std::size_t>(j - 1)] - k * a[static_cast<std::size_t>(m - j - 1)]) / denom;
    }
    std::copy(prev.begin(), prev.begin() + (m - 1), a.begin());
  }
  return true;
}

// Reflects inverse roots outside the unit circle to their reciprocals, which
// keeps the autocorrelation shape but makes the residual recursion stable.
void make_invertible(double* b, int q) {
  if (q == 0 || ma_spectral_radius(b, q) < kMaxMaRadius) return;
  MatrixXd companion = MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) companion(0, i) = -b[i];
  for (int i = 1; i < q; ++i) companion(i, i - 1) = 1.0;
  const Eigen::VectorXcd roots = companion.eigenvalues();
  // poly = prod (z - r_i), highest power first.
  std::vector<std::complex<double>> poly = {1.0};
  for (Index i = 0; i < roots.size(); ++i) {
    std::complex<double> r = roots(i);
    if (std::abs(r) >= kMaxMaRadius) r = kMaxMaRadius * kMaxMaRadius / std::conj(r);
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + 1] -= poly[k] * r;
    }
    poly = std::move(next);
  }
  for (int i = 0; i < q; ++i) b[i] = poly[static_cast<std::size_t>(i) + 1].real();
}

struct CssResult {
  VectorXd theta;
  double css = 0.0;
  int iterations = 0;
  bool converged = false;
};

CssResult minimize_css(std::span<const double> x, int p, int q, VectorXd theta,
                       const CssOptions& options) {
  std::vector<double> e;
  make_invertible(theta.data() + 1 + p, q);
  double css = css_residuals(x, p, q, theta, e);
  if (!std::isfinite(css)) {
    // Fall back to a neutral start when the initial guess is explosive.
    theta.setZero();
    css = css_residuals(x, p, q, theta, e);
  }
  double lambda = 1e-3;
  CssResult out{theta, css, 0, false};
  MatrixXd jtj;
  VectorXd jte;
  std::vector<double> e_trial;
  for (int it = 1; it <= options.max_iterations; ++it) {
    out.iterations = it;
    normal_equations(x, p, q, theta, e, jtj, jte);

    bool accepted = false;
    while (lambda < 1e12) {
      MatrixXd damped = jtj;
      damped.diagonal().array() += lambda * (jtj.diagonal().array() + 1e-12);
      const VectorXd step = damped.ldlt().solve(-jte);
      const VectorXd trial = theta + step;
      if (!ma_within_radius(trial.data() + 1 + p, q, kMaxMaRadius)) {
        lambda *= 10.0;
        continue;
      }
      const double css_trial = css_residuals(x, p, q, trial, e_trial);
      if (std::isfinite(css_trial) && css_trial <= css) {
        const double improvement = css - css_trial;
        theta = trial;
        css = css_trial;
        e.swap(e_trial);
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        out.theta = theta;
        out.css = css;
        if (improvement < options.tolerance * (1.0 + css)) {
          out.converged = true;
          return out;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at any damping: a stationary point.
      out.converged = true;
      return out;
    }
  }
  return out;
}

void check_orders(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) {
    fail(ErrorCode::kInvalidOrder, "ARMA orders must satisfy p >= 0, q >= 0, p + q >= 1");
  }
}

}  // namespace

int lag_cap(std::size_t n) {
  return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

ScoreSeries absolute_residuals(const TimeSeries& test, const Forecast& forecast,
                               const std::string& detector_name) {
  ScoreSeries out;
  out.detector_name = detector_name;
  out.indices = forecast.indices;
  out.scores.reserve(forecast.indices.size());
  for (std::size_t i = 0; i < forecast.indices.size(); ++i) {
    out.scores.push_back(std::abs(test[forecast.indices[i]] - forecast.predictions[i]));
  }
  return out;
}

ArFit ar_fit(const TimeSeries& train, int p) {
  if (p < 1) fail(ErrorCode::kInvalidOrder, "AR order must be >= 1");
  const std::size_t n = train.size();
  if (p > lag_cap(n)) {
    fail(ErrorCode::kOrderTooLarge, "AR order " + std::to_string(p) + " exceeds lag cap " +
                                        std::to_string(lag_cap(n)) + " for " +
                                        std::to_string(n) + " points");
  }
  if (n < 3 * static_cast<std::size_t>(p)) {
    fail(ErrorCode::kSeriesTooShort, "AR(p) needs at least 3p training points");
  }
  MatrixXd design;
  VectorXd target;
  lagged_design(train.values(), p, static_cast<std::size_t>(p), design, target);
  const auto ols = detail::least_squares(design, target);
  ArFit fit;
  fit.p = p;
  fit.intercept = ols.beta(0);
  fit.coefficients.assign(ols.beta.data() + 1, ols.beta.data() + 1 + p);
  const double dof = std::max<double>(1.0, static_cast<double>(design.rows() - design.cols()));
  fit.residual_sigma = std::sqrt(ols.rss / dof);
  return fit;
}

Forecast ar_forecast(const ArFit& fit, const TimeSeries& test) {
  Forecast out;
  const auto x = test.values();
  for (std::size_t t = static_cast<std::size_t>(fit.p); t < x.size(); ++t) {
    double pred = fit.intercept;
    for (int i = 1; i <= fit.p; ++i) pred += fit.coefficients[i - 1] * x[t - i];
    out.predictions.push_back(pred);
    out.indices.push_back(t);
  }
  return out;
}

ScoreSeries ar_score(const ArFit& fit, const TimeSeries& test) {
  return absolute_residuals(test, ar_forecast(fit, test), "ar");
}

ArmaFit arma_fit(const TimeSeries& train, int p, int q, const CssOptions& options) {
  check_orders(p, q);
  const auto x = train.values();
  const std::size_t n = x.size();
  if (n < 3 * static_cast<std::size_t>(p + q)) {
    fail(ErrorCode::kSeriesTooShort, "ARMA(p,q) needs at least 3(p+q) training points");
  }

  VectorXd theta = VectorXd::Zero(1 + p + q);
  if (q == 0) {
    MatrixXd design;
    VectorXd target;
    lagged_design(x, p, static_cast<std::size_t>(p), design, target);
    theta = detail::least_squares(design, target).beta;
  } else {
    // Hannan-Rissanen: residuals from a long AR stand in for the innovations.
    int long_order = std::max(lag_cap(n), p + q);
    while (long_order > 1 && n < static_cast<std::size_t>(3 * long_order + q + 2)) --long_order;
    const auto resid = long_ar_residuals(x, long_order);
    const std::size_t start = static_cast<std::size_t>(long_order + std::max(p, q));
    if (n <= start + static_cast<std::size_t>(1 + p + q)) {
      fail(ErrorCode::kSeriesTooShort, "too few points for Hannan-Rissanen regression");
    }
    const auto rows = static_cast<Index>(n - start);
    MatrixXd design(rows, 1 + p + q);
    VectorXd target(rows);
    for (Index r = 0; r < rows; ++r) {
      const std::size_t t = start + static_cast<std::size_t>(r);
      design(r, 0) = 1.0;
      for (int i = 1; i <= p; ++i) design(r, i) = x[t - i];
      for (int j = 1; j <= q; ++j) design(r, p + j) = resid[t - j];
      target(r) = x[t];
    }
    theta = detail::least_squares(design, target).beta;
  }

  const CssResult css = minimize_css(x, p, q, theta, options);
  ArmaFit fit;
  fit.p = p;
  fit.q = q;
  fit.intercept = css.theta(0);
  fit.ar.assign(css.theta.data() + 1, css.theta.data() + 1 + p);
  fit.ma.assign(css.theta.data() + 1 + p, css.theta.data() + 1 + p + q);
  fit.css = css.css;
  fit.iterations = css.iterations;
  fit.converged = css.converged;
  const double count = static_cast<double>(n - static_cast<std::size_t>(p));
  fit.residual_sigma = std::sqrt(css.css / std::max(1.0, count));
  return fit;
}

Forecast arma_forecast(const ArmaFit& fit, std::span<const double> x) {
  Forecast out;
  std::vector<double> e(x.size(), 0.0);
  for (std::size_t t = static_cast<std::size_t>(fit.p); t < x.size(); ++t) {
    double pred = fit.intercept;
    for (int i = 1; i <= fit.p; ++i) pred += fit.ar[i - 1] * x[t - i];
    for (int j = 1; j <= fit.q; ++j) {
      if (t >= static_cast<std::size_t>(j)) pred += fit.ma[j - 1] * e[t - j];
    }
    e[t] = x[t] - pred;
    out.predictions.push_back(pred);
    out.indices.push_back(t);
  }
  return out;
}

MaFit ma_fit(const TimeSeries& train, int q, const CssOptions& options) {
  if (q < 1) fail(ErrorCode::kInvalidOrder, "MA order must be >= 1");
  const std::size_t n = train.size();
  if (static_cast<std::size_t>(q) > n / 3) {
    fail(ErrorCode::kOrderTooLarge, "MA order " + std::to_string(q) + " too large for " +
                                        std::to_string(n) + " points");
  }
  const ArmaFit arma = arma_fit(train, 0, q, options);
  MaFit fit;
  fit.q = q;
  fit.coefficients = arma.ma;
  fit.mu = arma.intercept;
  fit.long_ar_order = std::max(lag_cap(n), q);
  fit.residual_sigma = arma.residual_sigma;
  fit.converged = arma.converged;
  return fit;
}

Forecast ma_forecast(const MaFit& fit, const TimeSeries& test) {
  ArmaFit arma;
  arma.p = 0;
  arma.q = fit.q;
  arma.ma = fit.coefficients;
  arma.intercept = fit.mu;
  return arma_forecast(arma, test.values());
}

ScoreSeries ma_score(const MaFit& fit, const TimeSeries& test) {
  return absolute_residuals(test, ma_forecast(fit, test), "ma");
}

ArimaFit arima_fit(const TimeSeries& train, int p, int d, int q, const CssOptions& options) {
  if (d < 0 || d > 2) fail(ErrorCode::kInvalidOrder, "ARIMA d must be 0, 1 or 2");
  check_orders(p, q);
  if (train.size() < 3 * static_cast<std::size_t>(p + q) + static_cast<std::size_t>(d)) {
    fail(ErrorCode::kSeriesTooShort, "ARIMA needs at least 3(p+q)+d training points");
  }
  ArimaFit fit;
  fit.d = d;
  fit.inner = arma_fit(d == 0 ? train : difference(train, d), p, q, options);
  return fit;
}

Forecast arima_forecast(const ArimaFit& fit, const TimeSeries& test) {
  const auto x = test.values();
  const auto d = static_cast<std::size_t>(fit.d);
  if (x.size() <= d) return {};
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = y.size() - 1; i > 0; --i) y[i] -= y[i - 1];
    y.erase(y.begin());
  }
  Forecast inner = arma_forecast(fit.inner, y);
  // Map back: xhat = x - (y - yhat), so the residual is shared by both spaces.
  Forecast out;
  for (std::size_t i = 0; i < inner.indices.size(); ++i) {
    const std::size_t t = inner.indices[i];
    out.indices.push_back(t + d);
    out.predictions.push_back(x[t + d] - (y[t] - inner.predictions[i]));
  }
  return out;
}

ScoreSeries arima_score(const ArimaFit& fit, const TimeSeries& test) {
  return absolute_residuals(test, arima_forecast(fit, test), "arima");
}

int detect_trend_order(const TimeSeries& train) {
  const auto x = train.values();
  const auto n = static_cast<Index>(x.size());
  if (n < 3) return 0;
  MatrixXd design(n, 2);
  VectorXd target(n);
  for (Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = static_cast<double>(i);
    target(i) = x[static_cast<std::size_t>(i)];
  }
  const auto ols = detail::least_squares(design, target);
  const double sigma = std::sqrt(ols.rss / static_cast<double>(n - 2));
  return std::abs(ols.beta(1)) * static_cast<double>(n) > 2.0 * sigma ? 1 : 0;
}

}  // namespace tsad
