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

#ifndef TSAD_TYPES_HPP
#define TSAD_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsad {

using Label = std::uint8_t;

// Equidistant univariate observations with optional binary anomaly labels.
// Construction validates: non-empty, finite values, labels in {0,1} with
// matching length.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> values,
                      std::optional<std::vector<Label>> labels = std::nullopt,
                      std::string series_id = {},
                      std::optional<int> period_hint = std::nullopt);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool has_labels() const noexcept { return labels_.has_value(); }
  std::span<const Label> labels() const noexcept {
    return labels_ ? std::span<const Label>(*labels_) : std::span<const Label>();
  }
  std::size_t anomaly_count() const noexcept;

  const std::string& id() const noexcept { return series_id_; }
  std::optional<int> period_hint() const noexcept { return period_hint_; }

  // Contiguous sub-series [begin, end); labels and metadata carried through.
  TimeSeries slice(std::size_t begin, std::size_t end) const;
  TimeSeries with_values(std::vector<double> values) const;

 private:
  std::vector<double> values_;
  std::optional<std::vector<Label>> labels_;
  std::string series_id_;
  std::optional<int> period_hint_;
};

// Sliding windows of width w, each paired with the value that follows it.
// Row i holds values[target_indices[i] - w .. target_indices[i] - 1].
struct WindowFrame {
  std::vector<double> data;  // row-major, rows() x width
  std::vector<double> targets;
  std::vector<std::size_t> target_indices;
  std::size_t width = 0;
  std::size_t stride = 1;

  std::size_t rows() const noexcept { return targets.size(); }
  std::span<const double> window(std::size_t i) const {
    return {data.data() + i * width, width};
  }
};

// Per-timestamp anomaly scores, higher means more anomalous.
struct ScoreSeries {
  std::vector<double> scores;
  std::vector<std::size_t> indices;
  std::string detector_name;

  std::size_t size() const noexcept { return scores.size(); }
  bool empty() const noexcept { return scores.empty(); }
};

struct Threshold {
  double delta = 0.0;
};

struct DetectorConfig {
  std::string name;
  std::size_t window_width = 30;
  std::map<std::string, std::string> hyperparameters;
  std::uint64_t seed = 0;

  bool has(const std::string& key) const { return hyperparameters.count(key) != 0; }
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  DetectorConfig& set(const std::string& key, const std::string& value) {
    hyperparameters[key] = value;
    return *this;
  }
};

}  // namespace tsad

#endif  // TSAD_TYPES_HPP
