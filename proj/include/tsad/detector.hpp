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

#ifndef TSAD_DETECTOR_HPP
#define TSAD_DETECTOR_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsad/types.hpp"

namespace tsad {

// One-step-ahead predictions for forecasting detectors, aligned with the
// indices of the matching ScoreSeries.
struct Forecast {
  std::vector<double> predictions;
  std::vector<std::size_t> indices;
};

// Trained state of one detector. Immutable after fit; score() is reentrant.
class FittedDetector {
 public:
  virtual ~FittedDetector() = default;

  const DetectorConfig& config() const noexcept { return config_; }

  // Scores every index of `test` the detector can see; warm-up prefixes that
  // need a full window or lag history are omitted.
  virtual ScoreSeries score(const TimeSeries& test) const = 0;

  // Point forecasts for NMM. std::nullopt for detectors that do not forecast.
  virtual std::optional<Forecast> forecast(const TimeSeries& /*test*/) const {
    return std::nullopt;
  }

  // Stable text digest of name, width, seed and hyperparameters.
  std::string fingerprint() const;

 protected:
  explicit FittedDetector(DetectorConfig config) : config_(std::move(config)) {}

 private:
  DetectorConfig config_;
};

enum class DetectorFamily { kStatistical, kMachineLearning, kNeural };

struct HyperparameterInfo {
  std::string key;
  std::string default_value;
  std::string description;
};

struct DetectorInfo {
  std::string name;
  DetectorFamily family;
  std::string summary;
  std::vector<HyperparameterInfo> hyperparameters;
};

std::string_view family_name(DetectorFamily family) noexcept;

/// Registry of all implemented detectors, in benchmark order.
const std::vector<DetectorInfo>& detector_catalog();

/// Throws kUnknownDetector (message lists valid names) for unknown `name`.
const DetectorInfo& find_detector(const std::string& name);

/// Rejects hyperparameter keys the detector does not document.
void validate_config(const DetectorConfig& config);

/// Fits the detector named by `config.name` on `train`.
std::unique_ptr<FittedDetector> fit_detector(const TimeSeries& train,
                                             const DetectorConfig& config);

}  // namespace tsad

#endif  // TSAD_DETECTOR_HPP
