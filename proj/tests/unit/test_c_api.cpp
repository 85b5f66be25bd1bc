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

// Exercises the library strictly through its C header.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "tsad/tsad.h"

namespace {

struct Series {
  tsad_series* ptr = nullptr;
  ~Series() { tsad_series_destroy(ptr); }
};

std::vector<double> sine(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) v[t] = std::sin(0.25 * static_cast<double>(t));
  return v;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(tsad_version()) > 0);
  CHECK(std::string(tsad_status_string(TSAD_OK)) != "");
  CHECK(std::string(tsad_status_string(TSAD_UNKNOWN_DETECTOR)) !=
        std::string(tsad_status_string(TSAD_IO_ERROR)));
}

TEST_CASE("series round trip through handles") {
  const std::vector<double> v = {1.0, 2.5, -3.0};
  const std::vector<uint8_t> l = {0, 1, 0};
  Series s;
  REQUIRE(tsad_series_create(v.data(), l.data(), v.size(), "abc", &s.ptr) == TSAD_OK);
  CHECK(tsad_series_length(s.ptr) == 3);
  CHECK(std::vector<double>(tsad_series_values(s.ptr), tsad_series_values(s.ptr) + 3) == v);
  CHECK(tsad_series_labels(s.ptr)[1] == 1);

  Series u;
  REQUIRE(tsad_series_create(v.data(), nullptr, v.size(), nullptr, &u.ptr) == TSAD_OK);
  CHECK(tsad_series_labels(u.ptr) == nullptr);
}

TEST_CASE("invalid input reports a status and a message") {
  const double bad[] = {1.0, NAN};
  tsad_series* s = nullptr;
  CHECK(tsad_series_create(bad, nullptr, 2, "x", &s) != TSAD_OK);
  CHECK(s == nullptr);
  CHECK(std::strlen(tsad_last_error()) > 0);
  CHECK(tsad_series_create(bad, nullptr, 0, "x", &s) != TSAD_OK);
  CHECK(tsad_series_create(nullptr, nullptr, 2, "x", &s) == TSAD_INVALID_ARGUMENT);
  CHECK(tsad_series_generate("length=abc", &s) != TSAD_OK);
}

TEST_CASE("catalog enumerates detectors") {
  CHECK(tsad_detector_count() == 14);
  CHECK(std::string(tsad_detector_name(0)) == "ar");
  CHECK(tsad_detector_name(14) == nullptr);
  char* json = nullptr;
  REQUIRE(tsad_catalog_json(&json) == TSAD_OK);
  CHECK(std::string(json).find("\"autoencoder\"") != std::string::npos);
  tsad_string_free(json);
}

TEST_CASE("fit and score a detector") {
  const auto v = sine(300);
  Series train, test;
  REQUIRE(tsad_series_create(v.data(), nullptr, 200, "train", &train.ptr) == TSAD_OK);
  REQUIRE(tsad_series_create(v.data() + 200, nullptr, 100, "test", &test.ptr) == TSAD_OK);
  tsad_detector* d = nullptr;
  REQUIRE(tsad_detector_fit("kmeans", train.ptr, 10, "k=3;attribution=window", 4, &d) ==
          TSAD_OK);
  tsad_scores* s = nullptr;
  REQUIRE(tsad_detector_score(d, test.ptr, &s) == TSAD_OK);
  CHECK(tsad_scores_length(s) == 90);
  CHECK(tsad_scores_indices(s)[0] == 10);
  CHECK(std::isfinite(tsad_scores_values(s)[0]));
  tsad_scores_destroy(s);
  tsad_detector_destroy(d);

  CHECK(tsad_detector_fit("nope", train.ptr, 0, nullptr, 0, &d) == TSAD_UNKNOWN_DETECTOR);
  CHECK(std::string(tsad_last_error()).find("kmeans") != std::string::npos);
  CHECK(tsad_detector_fit("ar", train.ptr, 0, "colour=red", 0, &d) == TSAD_INVALID_ARGUMENT);
}

TEST_CASE("metrics through the c interface") {
  const double s[] = {1, 2, 3, 4};
  const uint8_t l[] = {0, 0, 1, 1};
  double auc = -1.0, f1 = -1.0, thr = 0.0;
  REQUIRE(tsad_roc_auc(s, l, 4, &auc) == TSAD_OK);
  CHECK(auc == 1.0);
  REQUIRE(tsad_best_f1(s, l, 4, &f1, &thr) == TSAD_OK);
  CHECK(f1 == 1.0);
  const uint8_t none[] = {0, 0, 0, 0};
  CHECK(tsad_roc_auc(s, none, 4, &auc) == TSAD_DEGENERATE_LABELS);
}

TEST_CASE("benchmark run through the c interface") {
  tsad_run_config* c = nullptr;
  REQUIRE(tsad_run_config_create(&c) == TSAD_OK);
  CHECK(tsad_run_config_set(c, "dataset", "SYNTH") == TSAD_OK);
  CHECK(tsad_run_config_set(c, "detector", "ar,kmeans") == TSAD_OK);
  CHECK(tsad_run_config_set(c, "synth_count", "2") == TSAD_OK);
  CHECK(tsad_run_config_set(c, "shade", "blue") == TSAD_PARSE_ERROR);
  int calls = 0;
  auto progress = [](const char*, const char*, const char*, const char* status, void* user) {
    CHECK(std::string(status) == "ok");
    ++*static_cast<int*>(user);
  };
  tsad_benchmark* b = nullptr;
  REQUIRE(tsad_benchmark_run(c, progress, &calls, &b) == TSAD_OK);
  CHECK(calls == 4);
  CHECK(tsad_benchmark_row_count(b) == 4);
  CHECK(tsad_benchmark_ok_count(b) == 4);

  char* csv = nullptr;
  REQUIRE(tsad_benchmark_results_csv(b, 0, &csv) == TSAD_OK);
  CHECK(std::string(csv).rfind("dataset,series,detector,status,auc", 0) == 0);
  CHECK(std::string(csv).find("train_seconds") == std::string::npos);
  tsad_string_free(csv);
  char* json = nullptr;
  REQUIRE(tsad_benchmark_summary_json(b, &json) == TSAD_OK);
  CHECK(std::string(json).find("\"per_series\"") != std::string::npos);
  tsad_string_free(json);

  const auto dir = std::filesystem::temp_directory_path() / "tsad_c_api_reports";
  std::filesystem::remove_all(dir);
  CHECK(tsad_benchmark_write(b, dir.string().c_str()) == TSAD_OK);
  CHECK(std::filesystem::exists(dir / "results.csv"));
  std::filesystem::remove_all(dir);
  tsad_benchmark_destroy(b);
  tsad_run_config_destroy(c);
}

TEST_CASE("generated series and csv output") {
  Series s;
  REQUIRE(tsad_series_generate("length=300\nanomaly_rate=0.01\nseed=2", &s.ptr) == TSAD_OK);
  CHECK(tsad_series_length(s.ptr) == 300);
  int positives = 0;
  for (std::size_t i = 0; i < 300; ++i) positives += tsad_series_labels(s.ptr)[i];
  CHECK(positives == 3);
  const auto path = std::filesystem::temp_directory_path() / "tsad_c_api_series.csv";
  CHECK(tsad_series_write_csv(s.ptr, path.string().c_str()) == TSAD_OK);
  Series back;
  REQUIRE(tsad_series_load_yahoo(path.string().c_str(), &back.ptr) == TSAD_OK);
  CHECK(tsad_series_length(back.ptr) == 300);
  CHECK(tsad_series_values(back.ptr)[17] == tsad_series_values(s.ptr)[17]);
  std::filesystem::remove(path);
  Series missing;
  CHECK(tsad_series_load_yahoo("/nonexistent/x.csv", &missing.ptr) == TSAD_IO_ERROR);
}
