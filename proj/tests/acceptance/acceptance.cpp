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

// End-to-end acceptance checks. Prints one PASS, FAIL or SKIPPED line per
// criterion and exits non-zero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gradient_check.hpp"
#include "lof_oracle.hpp"
#include "metric_oracle.hpp"
#include "support.hpp"
#include "tsad/benchmark.hpp"
#include "tsad/dataset.hpp"
#include "tsad/detector.hpp"
#include "tsad/evaluation.hpp"
#include "tsad/ml.hpp"
#include "tsad/preprocessing.hpp"
#include "tsad/statistical.hpp"
#include "tsad/windowing.hpp"

namespace fs = std::filesystem;
using namespace tsad;

namespace {

enum class Verdict { kPass, kFail, kSkipped };

struct Outcome {
  Verdict verdict = Verdict::kFail;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Verdict::kPass : Verdict::kFail, std::move(detail)};
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// 1. Sweep AUC against pair counting.
Outcome metric_oracle() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto set = tsad::testing::random_scored_set(seed);
    worst = std::max(worst, std::abs(roc_auc(set.scores, set.labels).auc -
                                     tsad::testing::pair_count_auc(set.scores, set.labels)));
  }
  return pass_if(worst <= 1e-12, "200 sets, max |sweep - pairs| = " + sci(worst));
}

// 2. LOF against the naive reference on 40-window instances.
Outcome lof_oracle() {
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const std::size_t width = 3 + trial % 5;
    const std::size_t k = 3 + trial % 8;
    const double p = trial % 3 == 0 ? 1.0 : (trial % 3 == 1 ? 2.0 : 3.0);
    const auto ref_values = tsad::testing::gaussian(40 + width, 1000 + trial);
    const auto query_values = tsad::testing::gaussian(10 + width, 2000 + trial, 1.5);
    const WindowFrame ref = frame(TimeSeries(ref_values), width);
    const WindowFrame queries = frame(TimeSeries(query_values), width);
    const LofModel model = lof_fit(ref, k, p);
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < ref.rows(); ++i) {
      points.emplace_back(ref.window(i).begin(), ref.window(i).end());
    }
    for (std::size_t i = 0; i < queries.rows(); ++i) {
      const std::vector<double> q(queries.window(i).begin(), queries.window(i).end());
      const double expected = tsad::testing::naive_query_lof(points, q, k, p);
      worst = std::max(worst, std::abs(lof_score(model, queries.window(i)) - expected));
    }
  }
  return pass_if(worst <= 1e-9, "50 trials x 10 queries, max |pipeline - naive| = " + sci(worst));
}

// 3. Backprop against central differences.
Outcome gradient_check() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = tsad::testing::gradient_case(seed);
    worst = std::max(worst, tsad::testing::max_gradient_gap(c.net, c.inputs, c.targets));
  }
  return pass_if(worst < 1e-4, "20 configurations, max relative gap = " + sci(worst));
}

// 4. AR(2) and MA(1) coefficient recovery.
Outcome statistical_recovery() {
  const ArFit ar = ar_fit(TimeSeries(tsad::testing::simulate_ar({0.5, -0.3}, 1.0, 2000, 4)), 2);
  const MaFit ma = ma_fit(TimeSeries(tsad::testing::simulate_ma({0.6}, 1.0, 5000, 5)), 1);
  const bool ok = std::abs(ar.coefficients[0] - 0.5) <= 0.05 &&
                  std::abs(ar.coefficients[1] + 0.3) <= 0.05 &&
                  std::abs(ma.coefficients[0] - 0.6) <= 0.1;
  return pass_if(ok, "AR(2) = (" + fixed(ar.coefficients[0]) + ", " + fixed(ar.coefficients[1]) +
                         "), MA(1) = " + fixed(ma.coefficients[0]));
}

struct Prepared {
  TimeSeries train;
  TimeSeries test;
};

// Default split, standardised on the training part.
Prepared prepare(const TimeSeries& series) {
  const SplitResult parts = split(series);
  const StandardizeParams params = fit_standardizer(parts.train);
  return {apply(params, parts.train), apply(params, parts.test)};
}

double detector_nmm(const std::string& name, const Prepared& data) {
  DetectorConfig c;
  c.name = name;
  const auto fitted = fit_detector(data.train, c);
  const ForecastErrors e = forecast_errors(data.test, *fitted->forecast(data.test));
  return nmm(e.model_mse, e.naive_mse);
}

// Anomaly-free values of a generated series; NMM measures forecasting only.
TimeSeries clean_series(const SynthSpec& spec) {
  const SynthResult r = generate_synthetic_detailed(spec);
  return TimeSeries(r.clean, std::nullopt, r.series.id(), r.series.period_hint());
}

// 5. AR and Holt-Winters beat the naive model on their own kind of series.
Outcome nmm_property() {
  double worst_ar = 0.0, worst_hw = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SynthSpec ar_spec;
    ar_spec.base = SynthBase::kArProcess;
    ar_spec.ar_coeffs = {0.5};
    ar_spec.noise_sigma = 1.0;
    ar_spec.seed = 300 + seed;
    SynthSpec sine_spec;
    sine_spec.base = SynthBase::kSineSeasonal;
    sine_spec.season_period = 25;
    sine_spec.seed = 400 + seed;
    const Prepared ar_data = prepare(clean_series(ar_spec));
    const Prepared sine_data = prepare(clean_series(sine_spec));
    worst_ar = std::max({worst_ar, detector_nmm("ar", ar_data), detector_nmm("ar", sine_data)});
    worst_hw = std::max(worst_hw, detector_nmm("es", sine_data));
  }
  return pass_if(worst_ar < 1.0 && worst_hw < 1.0, "5 seeds each, worst NMM: AR " +
                                                       fixed(worst_ar) + ", Holt-Winters " +
                                                       fixed(worst_hw));
}

// 6. Every detector separates large point anomalies.
Outcome detection_property() {
  std::map<std::string, double> mean_auc;
  std::vector<Prepared> data;
  for (std::uint64_t s = 0; s < 20; ++s) {
    SynthSpec spec;
    spec.length = 1500;
    spec.base = SynthBase::kSineSeasonal;
    spec.noise_sigma = 0.02;
    spec.anomaly_rate = 0.01;
    spec.seed = 100 + s;
    data.push_back(prepare(generate_synthetic(spec)));
  }
  std::string summary, failing;
  for (const auto& info : detector_catalog()) {
    double sum = 0.0;
    std::size_t runs = 0;
    for (std::size_t s = 0; s < data.size(); ++s) {
      if (data[s].test.anomaly_count() == 0) continue;
      DetectorConfig c;
      c.name = info.name;
      c.seed = s;
      const TimedRun r = timed_run(c, data[s].train, data[s].test);
      sum += r.ok ? *r.report.auc : 0.0;  // a failed run counts as no detection
      ++runs;
    }
    const double mean = sum / static_cast<double>(runs);
    const double bar = info.name == "kmeans" ? 0.6 : 0.9;
    const bool below = info.name == "kmeans" ? !(mean > bar) : !(mean >= bar);
    summary += (summary.empty() ? "" : " ") + info.name + "=" + fixed(mean, 3);
    if (below) failing += (failing.empty() ? "" : ", ") + info.name + "=" + fixed(mean, 3);
  }
  std::string detail = "mean AUC over 20 series: " + summary;
  if (!failing.empty()) detail += "; failing: " + failing;
  return pass_if(failing.empty(), detail);
}

// 7. Published reference numbers on user-supplied data.
Outcome published_numbers(const fs::path& data_dir) {
  if (data_dir.empty()) return {Verdict::kSkipped, "no data directory (set TSAD_DATA_DIR)"};
  RunConfig base;
  base.data_dir = data_dir;
  std::vector<std::string> parts;
  bool any = false, ok = true;

  RunConfig ud1 = base;
  ud1.datasets = {"UD1"};
  ud1.detectors = {"ar", "ma"};
  try {
    const auto summary = run_benchmark(ud1).summarize();
    std::map<std::string, double> auc;
    for (const auto& s : summary) {
      if (s.mean_auc) auc[s.detector] = *s.mean_auc;
    }
    if (auc.count("ar") && auc.count("ma")) {
      any = true;
      const bool good = std::abs(auc["ar"] - 0.911394) <= 0.05 &&
                        std::abs(auc["ma"] - 0.868123) <= 0.05;
      ok = ok && good;
      parts.push_back("UD1 AR " + fixed(auc["ar"]) + " MA " + fixed(auc["ma"]) +
                      (good ? "" : " (outside band)"));
    } else {
      parts.push_back("UD1 produced no scored rows");
    }
  } catch (const Error& e) {
    parts.push_back(std::string("UD1 unavailable: ") + e.what());
  }

  RunConfig nyct = base;
  nyct.datasets = {"NYCT"};
  for (const auto& info : detector_catalog()) nyct.detectors.push_back(info.name);
  try {
    const BenchmarkResult r = run_benchmark(nyct);
    double worst_stat = 0.0, best_other = 0.0;
    std::size_t seen = 0;
    for (const auto& row : r.rows) {
      if (row.status != RowStatus::kOk) continue;
      ++seen;
      if (find_detector(row.detector).family == DetectorFamily::kStatistical) {
        worst_stat = std::max(worst_stat, *row.report.auc);
      } else {
        best_other = std::max(best_other, *row.report.auc);
      }
    }
    if (seen > 0) {
      any = true;
      const bool good = worst_stat < 0.65 && best_other > 0.75;
      ok = ok && good;
      parts.push_back("NYCT best statistical " + fixed(worst_stat) + ", best ML/neural " +
                      fixed(best_other) + (good ? "" : " (ordering not reproduced)"));
    } else {
      parts.push_back("NYCT produced no scored rows");
    }
  } catch (const Error& e) {
    parts.push_back(std::string("NYCT unavailable: ") + e.what());
  }

  std::string detail;
  for (const auto& p : parts) detail += (detail.empty() ? "" : "; ") + p;
  if (!any) return {Verdict::kSkipped, detail};
  return pass_if(ok, detail);
}

// 8. Statistical forecasters are much cheaper than the MLP.
Outcome timing_sanity() {
  RunConfig c;
  c.datasets = {"SYNTH"};
  c.detectors = {"ar", "ma", "mlp"};
  std::map<std::string, double> per_series;
  for (const auto& s : run_benchmark(c).summarize()) {
    if (s.ok_rows == 0) return {Verdict::kFail, s.detector + " has no ok rows"};
    per_series[s.detector] = s.mean_seconds_per_series;
  }
  const double mlp = per_series["mlp"];
  const bool ok = per_series["ar"] * 10.0 <= mlp && per_series["ma"] * 10.0 <= mlp;
  return pass_if(ok, "seconds per series: AR " + sci(per_series["ar"]) + ", MA " +
                         sci(per_series["ma"]) + ", MLP " + sci(mlp));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the named columns from CRLF-separated CSV text. Fields in the files
// compared here never contain commas or quotes before the last column.
std::string without_columns(const std::string& csv, const std::set<std::string>& drop) {
  std::istringstream in(csv);
  std::string line, out;
  std::vector<bool> keep;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (keep.empty()) {
      for (const auto& f : fields) {
        std::string name = f;
        if (!name.empty() && name.back() == '\r') name.pop_back();
        keep.push_back(drop.count(name) == 0);
      }
    }
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i < keep.size() && !keep[i]) continue;
      row += (row.empty() ? "" : ",") + fields[i];
    }
    out += row + "\n";
  }
  return out;
}

// 9. Identical seeded runs write identical results.
Outcome determinism() {
  RunConfig c;
  c.datasets = {"SYNTH"};
  for (const auto& info : detector_catalog()) c.detectors.push_back(info.name);
  c.seed = 17;
  const fs::path root = fs::temp_directory_path() / "tsad_acceptance_determinism";
  fs::remove_all(root);
  emit_reports(run_benchmark(c), root / "a");
  emit_reports(run_benchmark(c), root / "b");
  const std::set<std::string> timing = {"train_seconds", "inference_seconds"};
  const std::string a = without_columns(read_file(root / "a" / "results.csv"), timing);
  const std::string b = without_columns(read_file(root / "b" / "results.csv"), timing);
  fs::remove_all(root);
  const std::size_t lines = static_cast<std::size_t>(std::count(a.begin(), a.end(), '\n'));
  return pass_if(!a.empty() && a == b, std::to_string(lines - 1) + " rows, " +
                                           (a == b ? "byte-identical" : "different") +
                                           " without timing columns");
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsad acceptance checks"};
  std::vector<int> selected;
  std::string data_dir;
  app.add_option("--criterion", selected, "run only these criteria (1-9)")
      ->check(CLI::Range(1, 9));
  app.add_option("--data-dir", data_dir, "dataset root for criterion 7 (default $TSAD_DATA_DIR)");
  CLI11_PARSE(app, argc, argv);
  if (data_dir.empty()) {
    if (const char* env = std::getenv("TSAD_DATA_DIR")) data_dir = env;
  }

  const std::vector<Criterion> criteria = {
      {1, "metric oracle", 5, metric_oracle},
      {2, "LOF oracle", 10, lof_oracle},
      {3, "gradient check", 30, gradient_check},
      {4, "statistical recovery", 10, statistical_recovery},
      {5, "NMM property", 30, nmm_property},
      {6, "detection property", 300, detection_property},
      {7, "published numbers", 3600, [&] { return published_numbers(data_dir); }},
      {8, "timing sanity", 600, timing_sanity},
      {9, "determinism", 120, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {Verdict::kFail, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = "[" + fixed(secs, 1) + " s, limit " + fixed(c.limit_seconds, 0) + " s]";
    if (secs > c.limit_seconds && out.verdict == Verdict::kPass) {
      out.verdict = Verdict::kFail;
      timing = "[" + fixed(secs, 1) + " s, OVER limit " + fixed(c.limit_seconds, 0) + " s]";
    }
    const char* label = out.verdict == Verdict::kPass   ? "PASS"
                        : out.verdict == Verdict::kFail ? "FAIL"
                                                        : "SKIPPED";
    std::printf("criterion %d: %s %s: %s %s\n", c.id, label, c.title, out.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
    failures += out.verdict == Verdict::kFail;
  }
  return failures == 0 ? 0 : 1;
}
