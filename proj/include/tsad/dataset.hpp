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

#ifndef TSAD_DATASET_HPP
#define TSAD_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsad/types.hpp"

namespace tsad {

struct ManifestEntry {
  std::string series_id;
  std::filesystem::path path;
};

struct DatasetManifest {
  std::string dataset_id;  // UD1..UD4, NYCT, SYNTH or a manifest name
  std::vector<ManifestEntry> series;
  std::optional<std::size_t> expected_count;
};

// Yahoo S5 style CSV: header row with a `value` column and an `is_anomaly` or
// `anomaly` column. A `changepoint` column, when present, is OR-ed into labels.
TimeSeries load_yahoo_csv(const std::filesystem::path& path);
TimeSeries parse_yahoo_csv(const std::string& text, const std::string& series_id);

// NAB: data CSV (timestamp,value) plus a JSON map from relative data path to
// [[start, end], ...] timestamp windows. `label_key` defaults to the last two
// components of `data_path` (e.g. "realKnownCause/nyc_taxi.csv").
TimeSeries load_nab_csv(const std::filesystem::path& data_path,
                        const std::filesystem::path& label_windows_path,
                        const std::string& label_key = {});
TimeSeries parse_nab(const std::string& data_csv, const std::string& label_json,
                     const std::string& label_key);

// Seconds since the Unix epoch for "YYYY-MM-DD HH:MM:SS[.ffffff]" (UTC).
std::int64_t parse_timestamp(const std::string& text);

// Writes timestamp,value,is_anomaly with 17 significant digits.
void write_series_csv(const TimeSeries& series, const std::filesystem::path& path);
std::string format_series_csv(const TimeSeries& series);

// One series path per line; blank lines and "# comment" lines are ignored.
// Relative paths resolve against the manifest's directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

// Resolves UD1..UD4 (Yahoo S5 A1..A4) and NYCT (NAB) under `data_root`.
DatasetManifest resolve_dataset(const std::string& dataset_id,
                                const std::filesystem::path& data_root);

// Loads one manifest entry using the loader implied by the dataset id.
TimeSeries load_entry(const DatasetManifest& manifest, const ManifestEntry& entry,
                      const std::filesystem::path& data_root = {});

enum class SynthBase { kArProcess, kSineSeasonal, kTrendPlusNoise };
enum class AnomalyKind { kPoint, kCollective, kChangepoint };

struct SynthSpec {
  std::size_t length = 1500;
  SynthBase base = SynthBase::kSineSeasonal;
  double anomaly_rate = 0.01;
  AnomalyKind anomaly_kind = AnomalyKind::kPoint;
  std::uint64_t seed = 0;
  std::vector<double> ar_coeffs;        // for kArProcess; default {0.5}
  std::optional<int> season_period;     // for kSineSeasonal; default 50
  double noise_sigma = 0.05;            // innovation / observation noise
  double amplitude = 1.0;               // sine amplitude
  double trend_slope = 0.002;           // per step, kTrendPlusNoise
  std::string series_id;
};

struct SynthResult {
  TimeSeries series;
  std::vector<double> clean;                 // values before injection
  std::vector<std::size_t> injected_indices; // labeled indices
};

/// Deterministic given `spec.seed`. Throws kInvalidSpec when the spec is
/// inconsistent (rate outside (0,1), rate * length < 1, non-stationary AR).
SynthResult generate_synthetic_detailed(const SynthSpec& spec);
TimeSeries generate_synthetic(const SynthSpec& spec);

// Parses a flat key=value spec (length, base, anomaly_rate, anomaly_kind, seed,
// ar_coeffs, season_period, noise_sigma, amplitude, trend_slope, series_id).
SynthSpec parse_synth_spec(const std::string& text);

// Built-in smoke manifest: `count` seeded sine/AR series with point anomalies.
std::vector<SynthSpec> smoke_specs(std::size_t count, std::uint64_t seed);

}  // namespace tsad

#endif  // TSAD_DATASET_HPP
