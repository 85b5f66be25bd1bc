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


#include "tsad/tsad.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tsad/benchmark.hpp"
#include "tsad/dataset.hpp"
#include "tsad/detector.hpp"
#include "tsad/error.hpp"
#include "tsad/evaluation.hpp"
#include "tsad/key_value.hpp"

struct tsad_series {
  tsad::TimeSeries series;
};

struct tsad_detector {
  std::unique_ptr<tsad::FittedDetector> fitted;
};

struct tsad_scores {
  tsad::ScoreSeries scores;
};

struct tsad_run_config {
  tsad::RunConfig config;
  std::string output_dir;
};

struct tsad_benchmark {
  tsad::BenchmarkResult result;
};

namespace {

thread_local std::string last_error;

tsad_status record(tsad_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
tsad_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return TSAD_OK;
  } catch (const tsad::Error& e) {
    return record(static_cast<tsad_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(TSAD_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(TSAD_INTERNAL, e.what());
  }
}

void require(bool condition, const char* what) {
  if (!condition) tsad::fail(tsad::ErrorCode::kInvalidArgument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string text_or_empty(const char* s) { return s ? std::string(s) : std::string(); }

std::span<const tsad::Label> label_span(const uint8_t* labels, size_t n) {
  return {labels, n};
}

}  // namespace

extern "C" {

const char* tsad_version(void) { return "0.1.0"; }

const char* tsad_last_error(void) { return last_error.c_str(); }

const char* tsad_status_string(tsad_status status) {
  static thread_local std::string name;
  name = std::string(tsad::error_code_name(static_cast<tsad::ErrorCode>(status)));
  return name.c_str();
}

void tsad_string_free(char* s) { std::free(s); }

tsad_status tsad_series_create(const double* values, const uint8_t* labels, size_t length,
                               const char* series_id, tsad_series** out) {
  return guarded([&] {
    require(out && (values || length == 0), "null argument");
    std::vector<double> v(values, values + length);
    std::optional<std::vector<tsad::Label>> l;
    if (labels) l.emplace(labels, labels + length);
    *out = new tsad_series{tsad::TimeSeries(std::move(v), std::move(l), text_or_empty(series_id))};
  });
}

tsad_status tsad_series_load_yahoo(const char* path, tsad_series** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new tsad_series{tsad::load_yahoo_csv(path)};
  });
}

tsad_status tsad_series_load_nab(const char* data_path, const char* labels_path,
                                 const char* label_key, tsad_series** out) {
  return guarded([&] {
    require(data_path && labels_path && out, "null argument");
    *out = new tsad_series{tsad::load_nab_csv(data_path, labels_path, text_or_empty(label_key))};
  });
}

tsad_status tsad_series_generate(const char* spec_text, tsad_series** out) {
  return guarded([&] {
    require(spec_text && out, "null argument");
    *out = new tsad_series{tsad::generate_synthetic(tsad::parse_synth_spec(spec_text))};
  });
}

tsad_status tsad_series_write_csv(const tsad_series* series, const char* path) {
  return guarded([&] {
    require(series && path, "null argument");
    tsad::write_series_csv(series->series, path);
  });
}

size_t tsad_series_length(const tsad_series* series) { return series ? series->series.size() : 0; }

const double* tsad_series_values(const tsad_series* series) {
  return series ? series->series.values().data() : nullptr;
}

const uint8_t* tsad_series_labels(const tsad_series* series) {
  return series && series->series.has_labels() ? series->series.labels().data() : nullptr;
}

void tsad_series_destroy(tsad_series* series) { delete series; }

size_t tsad_detector_count(void) { return tsad::detector_catalog().size(); }

const char* tsad_detector_name(size_t index) {
  const auto& catalog = tsad::detector_catalog();
  return index < catalog.size() ? catalog[index].name.c_str() : nullptr;
}

tsad_status tsad_catalog_json(char** out) {
  return guarded([&] {
    require(out, "null argument");
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& info : tsad::detector_catalog()) {
      nlohmann::ordered_json params = nlohmann::ordered_json::array();
      for (const auto& h : info.hyperparameters) {
        params.push_back({{"key", h.key}, {"default", h.default_value}, {"description", h.description}});
      }
      doc.push_back({{"name", info.name},
                     {"family", std::string(tsad::family_name(info.family))},
                     {"summary", info.summary},
                     {"hyperparameters", params}});
    }
    *out = duplicate(doc.dump(2));
  });
}

tsad_status tsad_detector_fit(const char* name, const tsad_series* train, size_t window_width,
                              const char* params, uint64_t seed, tsad_detector** out) {
  return guarded([&] {
    require(name && train && out, "null argument");
    tsad::DetectorConfig config;
    config.name = name;
    config.window_width = window_width ? window_width : 30;
    config.seed = seed;
    if (params) {
      for (const auto& [k, v] : tsad::parse_key_values(params)) config.set(k, v);
    }
    *out = new tsad_detector{tsad::fit_detector(train->series, config)};
  });
}

tsad_status tsad_detector_score(const tsad_detector* detector, const tsad_series* test,
                                tsad_scores** out) {
  return guarded([&] {
    require(detector && test && out, "null argument");
    *out = new tsad_scores{detector->fitted->score(test->series)};
  });
}

void tsad_detector_destroy(tsad_detector* detector) { delete detector; }

size_t tsad_scores_length(const tsad_scores* scores) { return scores ? scores->scores.size() : 0; }

const double* tsad_scores_values(const tsad_scores* scores) {
  return scores ? scores->scores.scores.data() : nullptr;
}

const size_t* tsad_scores_indices(const tsad_scores* scores) {
  return scores ? scores->scores.indices.data() : nullptr;
}

void tsad_scores_destroy(tsad_scores* scores) { delete scores; }

tsad_status tsad_roc_auc(const double* scores, const uint8_t* labels, size_t n, double* auc) {
  return guarded([&] {
    require(scores && labels && auc, "null argument");
    *auc = tsad::roc_auc(std::span<const double>(scores, n), label_span(labels, n)).auc;
  });
}

tsad_status tsad_best_f1(const double* scores, const uint8_t* labels, size_t n, double* f1,
                         double* threshold) {
  return guarded([&] {
    require(scores && labels && f1, "null argument");
    const auto r = tsad::best_f1(std::span<const double>(scores, n), label_span(labels, n));
    *f1 = r.f1;
    if (threshold) *threshold = r.threshold;
  });
}

tsad_status tsad_run_config_create(tsad_run_config** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new tsad_run_config{};
    (*out)->output_dir = (*out)->config.output_dir.string();
  });
}

tsad_status tsad_run_config_set(tsad_run_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config && key && value, "null argument");
    tsad::apply_setting(config->config, key, value);
    config->output_dir = config->config.output_dir.string();
  });
}

tsad_status tsad_run_config_load_file(tsad_run_config* config, const char* path) {
  return guarded([&] {
    require(config && path, "null argument");
    std::ifstream in(path);
    if (!in) tsad::fail(tsad::ErrorCode::kIoError, std::string("cannot read config ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    for (const auto& [k, v] : tsad::parse_key_values(ss.str())) {
      tsad::apply_setting(config->config, k, v);
    }
    config->output_dir = config->config.output_dir.string();
  });
}

const char* tsad_run_config_output_dir(const tsad_run_config* config) {
  return config ? config->output_dir.c_str() : nullptr;
}

void tsad_run_config_destroy(tsad_run_config* config) { delete config; }

tsad_status tsad_benchmark_run(const tsad_run_config* config, tsad_progress_fn progress,
                               void* user, tsad_benchmark** out) {
  return guarded([&] {
    require(config && out, "null argument");
    tsad::ProgressFn fn;
    if (progress) {
      fn = [progress, user](const tsad::ResultRow& row) {
        progress(row.dataset_id.c_str(), row.series_id.c_str(), row.detector.c_str(),
                 std::string(tsad::status_name(row.status)).c_str(), user);
      };
    }
    auto bench = std::make_unique<tsad_benchmark>();
    bench->result = tsad::run_benchmark(config->config, fn);
    *out = bench.release();
  });
}

size_t tsad_benchmark_row_count(const tsad_benchmark* bench) {
  return bench ? bench->result.rows.size() : 0;
}

size_t tsad_benchmark_ok_count(const tsad_benchmark* bench) {
  return bench ? bench->result.ok_count() : 0;
}

tsad_status tsad_benchmark_write(const tsad_benchmark* bench, const char* output_dir) {
  return guarded([&] {
    require(bench && output_dir, "null argument");
    tsad::emit_reports(bench->result, output_dir);
  });
}

tsad_status tsad_benchmark_results_csv(const tsad_benchmark* bench, int with_timing, char** out) {
  return guarded([&] {
    require(bench && out, "null argument");
    *out = duplicate(tsad::results_csv(bench->result.rows, with_timing != 0));
  });
}

tsad_status tsad_benchmark_summary_json(const tsad_benchmark* bench, char** out) {
  return guarded([&] {
    require(bench && out, "null argument");
    *out = duplicate(tsad::summary_json(bench->result));
  });
}

void tsad_benchmark_destroy(tsad_benchmark* bench) { delete bench; }

}  // extern "C"
