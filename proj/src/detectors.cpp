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
#include <functional>
#include <sstream>

#include "tsad/detector.hpp"
#include "tsad/error.hpp"
#include "tsad/key_value.hpp"
#include "tsad/ml.hpp"
#include "tsad/neural.hpp"
#include "tsad/statistical.hpp"
#include "tsad/windowing.hpp"

namespace tsad {
namespace {

using ForecastFn = std::function<Forecast(const TimeSeries&)>;
using WindowFn = std::function<ScoreSeries(const WindowFrame&)>;

// |x_t - forecast_t|, optionally divided by a fitted scale.
class ForecastingDetector final : public FittedDetector {
 public:
  ForecastingDetector(DetectorConfig config, ForecastFn fn, double scale = 1.0)
      : FittedDetector(std::move(config)), fn_(std::move(fn)), scale_(scale) {}

  ScoreSeries score(const TimeSeries& test) const override {
    ScoreSeries out = absolute_residuals(test, fn_(test), config().name);
    for (double& s : out.scores) s /= scale_;
    return out;
  }

  std::optional<Forecast> forecast(const TimeSeries& test) const override { return fn_(test); }

 private:
  ForecastFn fn_;
  double scale_;
};

// Scores rows of window + target. In onset mode the score at t is the rise
// of the window score from t-1 to t, which pins a window-level anomaly to the
// step where the deviating value enters.
class WindowDetector final : public FittedDetector {
 public:
  WindowDetector(DetectorConfig config, WindowFn fn, bool onset)
      : FittedDetector(std::move(config)), fn_(std::move(fn)), onset_(onset) {}

  ScoreSeries score(const TimeSeries& test) const override {
    ScoreSeries raw = fn_(with_targets(frame(test, config().window_width)));
    raw.detector_name = config().name;
    if (!onset_) return raw;
    ScoreSeries out;
    out.detector_name = raw.detector_name;
    for (std::size_t i = 1; i < raw.size(); ++i) {
      out.scores.push_back(raw.scores[i] - raw.scores[i - 1]);
      out.indices.push_back(raw.indices[i]);
    }
    return out;
  }

 private:
  WindowFn fn_;
  bool onset_;
};

constexpr const char* kAttribution = "attribution";

HyperparameterInfo attribution_info() {
  return {kAttribution, "onset",
          "onset: rise of the window score at its last index; window: raw window score"};
}

bool onset_mode(const DetectorConfig& config) {
  const std::string mode = config.get_string(kAttribution, "onset");
  if (mode != "onset" && mode != "window") {
    fail(ErrorCode::kInvalidArgument, "attribution must be 'onset' or 'window'");
  }
  return mode == "onset";
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  for (const auto& part : split(text, ',')) {
    const long v = parse_long(trim(part), "hidden_dims");
    if (v < 1) fail(ErrorCode::kInvalidArgument, "hidden_dims entries must be positive");
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.empty()) fail(ErrorCode::kInvalidArgument, "hidden_dims is empty");
  return dims;
}

TrainSpec train_spec(const DetectorConfig& c) {
  TrainSpec spec;
  const long batch = c.get_int("batch_size", 32);
  const long epochs = c.get_int("epochs", 50);
  if (batch < 1 || epochs < 1) {
    fail(ErrorCode::kInvalidArgument, "batch_size and epochs must be >= 1");
  }
  spec.batch_size = static_cast<std::size_t>(batch);
  spec.epochs = static_cast<std::size_t>(epochs);
  spec.learning_rate = c.get_double("learning_rate", 1e-3);
  spec.seed = c.seed;
  return spec;
}

// One sample per column.
Eigen::MatrixXd columns(const WindowFrame& f) {
  return Eigen::Map<const Eigen::MatrixXd>(f.data.data(), static_cast<Eigen::Index>(f.width),
                                           static_cast<Eigen::Index>(f.rows()));
}

std::optional<double> optional_double(const DetectorConfig& c, const std::string& key) {
  if (!c.has(key)) return std::nullopt;
  return c.get_double(key, 0.0);
}

std::size_t positive_size(const DetectorConfig& c, const std::string& key, long fallback) {
  const long v = c.get_int(key, fallback);
  if (v < 1) fail(ErrorCode::kInvalidArgument, key + " must be >= 1");
  return static_cast<std::size_t>(v);
}

using FitFn = std::function<std::unique_ptr<FittedDetector>(const TimeSeries&,
                                                            const DetectorConfig&)>;

std::unique_ptr<FittedDetector> fit_ar(const TimeSeries& train, const DetectorConfig& c) {
  const int p = static_cast<int>(c.get_int("p", lag_cap(train.size())));
  ArFit fit = ar_fit(train, p);
  return std::make_unique<ForecastingDetector>(
      c, [fit](const TimeSeries& t) { return ar_forecast(fit, t); });
}

std::unique_ptr<FittedDetector> fit_ma(const TimeSeries& train, const DetectorConfig& c) {
  const int q = static_cast<int>(c.get_int("q", static_cast<long>(c.window_width)));
  MaFit fit = ma_fit(train, q);
  return std::make_unique<ForecastingDetector>(
      c, [fit](const TimeSeries& t) { return ma_forecast(fit, t); });
}

std::unique_ptr<FittedDetector> fit_arima(const TimeSeries& train, const DetectorConfig& c) {
  const int p = static_cast<int>(c.get_int("p", 1));
  const int q = static_cast<int>(c.get_int("q", 2));
  const std::string d_text = c.get_string("d", "auto");
  const int d = d_text == "auto" ? detect_trend_order(train)
                                 : static_cast<int>(parse_long(d_text, "d"));
  ArimaFit fit = arima_fit(train, p, d, q);
  return std::make_unique<ForecastingDetector>(
      c, [fit](const TimeSeries& t) { return arima_forecast(fit, t); });
}

SmoothingSearch smoothing_search(const DetectorConfig& c) {
  return {optional_double(c, "alpha"), optional_double(c, "beta"), optional_double(c, "gamma")};
}

std::unique_ptr<FittedDetector> fit_ses(const TimeSeries& train, const DetectorConfig& c) {
  SmoothingFit fit = ses_fit(train, smoothing_search(c));
  return std::make_unique<ForecastingDetector>(
      c, [fit](const TimeSeries& t) { return smoothing_forecast(fit, t); });
}

std::unique_ptr<FittedDetector> fit_es(const TimeSeries& train, const DetectorConfig& c) {
  std::optional<int> period = train.period_hint();
  if (c.has("period")) period = static_cast<int>(c.get_int("period", 0));
  SmoothingFit fit;
  if (period && *period >= 2 && train.size() >= 2 * static_cast<std::size_t>(*period)) {
    fit = holtwinters_fit(train, *period, smoothing_search(c));
  } else if (c.has("period")) {
    // An explicit period that cannot be honoured is an error, not a fallback.
    fit = holtwinters_fit(train, *period, smoothing_search(c));
  } else {
    fit = holt_fit(train, smoothing_search(c));
  }
  return std::make_unique<ForecastingDetector>(
      c, [fit](const TimeSeries& t) { return smoothing_forecast(fit, t); });
}

std::unique_ptr<FittedDetector> fit_pci(const TimeSeries& train, const DetectorConfig& c) {
  const bool two_sided = parse_bool(c.get_string("two_sided", "false"), "two_sided");
  PciFit fit = pci_fit(train, static_cast<int>(c.get_int("k", 30)),
                       c.get_double("pci_alpha", 98.5), two_sided);
  return std::make_unique<ForecastingDetector>(
      c, [fit](const TimeSeries& t) { return pci_forecast(fit, t); }, fit.half_width);
}

WindowFrame train_rows(const TimeSeries& train, const DetectorConfig& c) {
  return with_targets(frame(train, c.window_width));
}

std::unique_ptr<FittedDetector> fit_kmeans(const TimeSeries& train, const DetectorConfig& c) {
  KMeansModel m = kmeans_fit(train_rows(train, c), positive_size(c, "k", 4), c.seed);
  return std::make_unique<WindowDetector>(
      c, [m](const WindowFrame& f) { return kmeans_score(m, f); }, onset_mode(c));
}

std::unique_ptr<FittedDetector> fit_dbscan(const TimeSeries& train, const DetectorConfig& c) {
  DbscanModel m = dbscan_fit(train_rows(train, c), c.get_double("epsilon", 0.4),
                             positive_size(c, "mu", 5));
  return std::make_unique<WindowDetector>(
      c, [m](const WindowFrame& f) { return dbscan_score(m, f); }, onset_mode(c));
}

std::unique_ptr<FittedDetector> fit_lof(const TimeSeries& train, const DetectorConfig& c) {
  auto m = std::make_shared<LofModel>(lof_fit(train_rows(train, c),
                                              positive_size(c, "k_neighbors", 10),
                                              c.get_double("minkowski_p", 2.0)));
  return std::make_unique<WindowDetector>(
      c, [m](const WindowFrame& f) { return lof_score(*m, f); }, onset_mode(c));
}

std::unique_ptr<FittedDetector> fit_iforest(const TimeSeries& train, const DetectorConfig& c) {
  IsoForest m = iforest_fit(train_rows(train, c), positive_size(c, "n_trees", 10), c.seed);
  return std::make_unique<WindowDetector>(
      c, [m](const WindowFrame& f) { return iforest_score(m, f); }, onset_mode(c));
}

// Keeps only [x_{t-1}, x_t] of each row.
WindowFrame lag_pairs(const WindowFrame& f) {
  WindowFrame out;
  out.width = 2;
  out.targets = f.targets;
  out.target_indices = f.target_indices;
  out.data.reserve(2 * f.rows());
  for (std::size_t i = 0; i < f.rows(); ++i) {
    const auto w = f.window(i);
    out.data.push_back(w[f.width - 2]);
    out.data.push_back(w[f.width - 1]);
  }
  return out;
}

std::unique_ptr<FittedDetector> fit_ocsvm(const TimeSeries& train, const DetectorConfig& c) {
  const std::string features = c.get_string("features", "window");
  if (features != "window" && features != "lag_pair") {
    fail(ErrorCode::kInvalidArgument, "features must be 'window' or 'lag_pair'");
  }
  const bool pairs = features == "lag_pair";
  OcSvmOptions opt;
  opt.nu = c.get_double("nu", 0.7);
  const double dims = pairs ? 2.0 : static_cast<double>(c.window_width);
  opt.gamma = c.get_double("rbf_gamma", 1.0 / dims);
  if (!(opt.gamma > 0.0)) fail(ErrorCode::kInvalidArgument, "rbf_gamma must be positive");
  const WindowFrame rows = train_rows(train, c);
  OcSvmModel m = ocsvm_fit(pairs ? lag_pairs(rows) : rows, opt);
  return std::make_unique<WindowDetector>(
      c,
      [m, pairs](const WindowFrame& f) { return ocsvm_score(m, pairs ? lag_pairs(f) : f); },
      onset_mode(c));
}

std::unique_ptr<FittedDetector> fit_xgboost(const TimeSeries& train, const DetectorConfig& c) {
  GbtOptions opt;
  opt.n_estimators = positive_size(c, "n_estimators", 1000);
  opt.max_depth = static_cast<int>(c.get_int("max_depth", 3));
  opt.learning_rate = c.get_double("learning_rate", 0.1);
  opt.lambda = c.get_double("lambda", 1.0);
  opt.gamma = c.get_double("gamma_reg", 0.0);
  auto m = std::make_shared<GbtModel>(gbt_fit(frame(train, c.window_width), opt));
  const std::size_t w = c.window_width;
  return std::make_unique<ForecastingDetector>(c, [m, w](const TimeSeries& t) {
    const WindowFrame f = frame(t, w);
    Forecast out;
    out.indices = f.target_indices;
    for (std::size_t i = 0; i < f.rows(); ++i) out.predictions.push_back(gbt_predict(*m, f.window(i)));
    return out;
  });
}

std::unique_ptr<FittedDetector> fit_mlp(const TimeSeries& train, const DetectorConfig& c) {
  const std::size_t w = c.window_width;
  std::vector<std::size_t> dims = {w};
  for (std::size_t d : parse_dims(c.get_string("hidden_dims", "100,50"))) dims.push_back(d);
  dims.push_back(1);
  std::vector<Activation> acts(dims.size() - 1, Activation::kRelu);
  acts.back() = Activation::kLinear;
  auto net = std::make_shared<DenseNet>(dims, acts, c.seed);
  const WindowFrame f = frame(train, w);
  const Eigen::MatrixXd targets = Eigen::Map<const Eigen::MatrixXd>(
      f.targets.data(), 1, static_cast<Eigen::Index>(f.rows()));
  net_train(*net, columns(f), targets, train_spec(c));
  return std::make_unique<ForecastingDetector>(c, [net, w](const TimeSeries& t) {
    const WindowFrame tf = frame(t, w);
    const Eigen::MatrixXd pred = net->forward_batch(columns(tf));
    Forecast out;
    out.indices = tf.target_indices;
    out.predictions.assign(pred.data(), pred.data() + pred.size());
    return out;
  });
}

std::unique_ptr<FittedDetector> fit_autoencoder(const TimeSeries& train,
                                                const DetectorConfig& c) {
  const std::size_t width = c.window_width + 1;
  const auto encoder = parse_dims(c.get_string("hidden_dims", "32,16"));
  std::vector<std::size_t> dims = {width};
  dims.insert(dims.end(), encoder.begin(), encoder.end());
  dims.insert(dims.end(), encoder.rbegin() + 1, encoder.rend());
  dims.push_back(width);
  std::vector<Activation> acts(dims.size() - 1, Activation::kRelu);
  acts.back() = Activation::kLinear;
  auto net = std::make_shared<DenseNet>(dims, acts, c.seed);
  const Eigen::MatrixXd x = columns(train_rows(train, c));
  net_train(*net, x, x, train_spec(c));
  return std::make_unique<WindowDetector>(
      c,
      [net](const WindowFrame& f) {
        const Eigen::MatrixXd in = columns(f);
        const Eigen::MatrixXd out = net->forward_batch(in);
        ScoreSeries s;
        s.indices = f.target_indices;
        s.scores.reserve(f.rows());
        for (Eigen::Index i = 0; i < in.cols(); ++i) s.scores.push_back((out.col(i) - in.col(i)).norm());
        return s;
      },
      onset_mode(c));
}

struct Entry {
  DetectorInfo info;
  FitFn fit;
};

const std::vector<Entry>& registry() {
  using F = DetectorFamily;
  static const std::vector<Entry> entries = {
      {{"ar", F::kStatistical, "autoregressive forecaster fitted by conditional least squares",
        {{"p", "floor(12*(N_train/100)^0.25)", "lag order; default is the maximal lag"}}},
       fit_ar},
      {{"ma", F::kStatistical, "moving-average forecaster (long-AR start, CSS refinement)",
        {{"q", "window width (30)", "residual lag order"}}},
       fit_ma},
      {{"arima", F::kStatistical, "ARIMA(p,d,q) by conditional sum of squares",
        {{"p", "1", "autoregressive order"},
         {"d", "auto", "0, 1 or 2; auto picks 1 when a linear trend is significant"},
         {"q", "2", "moving-average order"}}},
       fit_arima},
      {{"ses", F::kStatistical, "simple exponential smoothing, alpha by grid search",
        {{"alpha", "grid 0.01..0.99", "level smoothing"}}},
       fit_ses},
      {{"es", F::kStatistical,
        "Holt-Winters additive smoothing when a season is known, Holt otherwise",
        {{"alpha", "grid 0.01..0.99", "level smoothing"},
         {"beta", "grid 0.01..0.99", "trend smoothing"},
         {"gamma", "grid 0.01..0.99", "season smoothing"},
         {"period", "series period hint", "season length in steps"}}},
       fit_es},
      {{"pci", F::kStatistical, "prediction confidence interval on an inverse-distance forecast",
        {{"k", "30", "half window; 2k past points feed the estimate"},
         {"pci_alpha", "98.5", "confidence percentile in (50, 100)"},
         {"two_sided", "false", "offline estimate from both neighbours"}}},
       fit_pci},
      {{"kmeans", F::kMachineLearning,
        "subsequence clustering; distance to the nearest centroid (a weak baseline)",
        {{"k", "4", "clusters"}, attribution_info()}},
       fit_kmeans},
      {{"dbscan", F::kMachineLearning, "distance to the nearest DBSCAN core window",
        {{"epsilon", "0.4", "neighbourhood radius"},
         {"mu", "5", "neighbours needed for a core window"},
         attribution_info()}},
       fit_dbscan},
      {{"lof", F::kMachineLearning, "local outlier factor against the training windows",
        {{"k_neighbors", "10", "neighbourhood size"},
         {"minkowski_p", "2", "Minkowski distance order"},
         attribution_info()}},
       fit_lof},
      {{"iforest", F::kMachineLearning, "isolation forest over windows",
        {{"n_trees", "10", "number of isolation trees"}, attribution_info()}},
       fit_iforest},
      {{"ocsvm", F::kMachineLearning, "one-class SVM with RBF kernel",
        {{"nu", "0.7", "upper bound on the outlier fraction"},
         {"rbf_gamma", "1/w", "kernel width (1/2 with lag_pair features)"},
         {"features", "window", "window: whole window; lag_pair: [x_t, x_{t-1}] only"},
         attribution_info()}},
       fit_ocsvm},
      {{"xgboost", F::kMachineLearning, "gradient-boosted regression trees forecaster",
        {{"n_estimators", "1000", "boosting rounds"},
         {"max_depth", "3", "tree depth"},
         {"learning_rate", "0.1", "shrinkage"},
         {"lambda", "1", "L2 penalty on leaf weights"},
         {"gamma_reg", "0", "penalty per leaf"}}},
       fit_xgboost},
      {{"mlp", F::kNeural, "multilayer perceptron forecaster",
        {{"hidden_dims", "100,50", "hidden layer sizes"},
         {"epochs", "50", "training epochs"},
         {"batch_size", "32", "mini-batch size"},
         {"learning_rate", "0.001", "Adam step size"}}},
       fit_mlp},
      {{"autoencoder", F::kNeural, "dense autoencoder; window reconstruction error",
        {{"hidden_dims", "32,16", "encoder sizes, mirrored by the decoder"},
         {"epochs", "50", "training epochs"},
         {"batch_size", "32", "mini-batch size"},
         {"learning_rate", "0.001", "Adam step size"},
         attribution_info()}},
       fit_autoencoder},
  };
  return entries;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.info.name == name) return e;
  }
  std::string valid;
  for (const auto& e : registry()) valid += (valid.empty() ? "" : ", ") + e.info.name;
  fail(ErrorCode::kUnknownDetector, "unknown detector '" + name + "'; valid: " + valid);
}

}  // namespace

std::string FittedDetector::fingerprint() const {
  std::ostringstream os;
  os << config_.name << "|w=" << config_.window_width << "|seed=" << config_.seed;
  for (const auto& [k, v] : config_.hyperparameters) os << '|' << k << '=' << v;
  return os.str();
}

std::string_view family_name(DetectorFamily family) noexcept {
  switch (family) {
    case DetectorFamily::kStatistical: return "statistical";
    case DetectorFamily::kMachineLearning: return "ml";
    case DetectorFamily::kNeural: return "neural";
  }
  return "unknown";
}

const std::vector<DetectorInfo>& detector_catalog() {
  static const std::vector<DetectorInfo> catalog = [] {
    std::vector<DetectorInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

const DetectorInfo& find_detector(const std::string& name) { return find_entry(name).info; }

void validate_config(const DetectorConfig& config) {
  const DetectorInfo& info = find_detector(config.name);
  if (config.window_width < 1) fail(ErrorCode::kInvalidArgument, "window width must be >= 1");
  for (const auto& [key, value] : config.hyperparameters) {
    const bool known = std::any_of(info.hyperparameters.begin(), info.hyperparameters.end(),
                                   [&](const HyperparameterInfo& h) { return h.key == key; });
    if (!known) {
      fail(ErrorCode::kInvalidArgument,
           "detector '" + config.name + "' has no hyperparameter '" + key + "'");
    }
  }
}

std::unique_ptr<FittedDetector> fit_detector(const TimeSeries& train,
                                             const DetectorConfig& config) {
  validate_config(config);
  return find_entry(config.name).fit(train, config);
}

}  // namespace tsad
