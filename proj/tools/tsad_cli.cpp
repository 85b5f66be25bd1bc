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


// tsad: command-line front end for the anomaly-detection benchmark.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsad/tsad.h"

namespace {

int report_failure(const char* what, tsad_status status) {
  std::fprintf(stderr, "tsad: %s failed (%s): %s\n", what, tsad_status_string(status),
               tsad_last_error());
  return 2;
}

struct RunOptions {
  std::string config_path;
  std::vector<std::string> datasets;
  std::vector<std::string> detectors;
  std::vector<std::string> params;
  std::string seed;
  std::string out;
  std::string data_dir;
  bool no_standardize = false;
  bool detrend = false;
  int deseasonalize = 0;
  int repeat = 0;
  int synth_count = 0;
  bool quiet = false;
};

void print_progress(const char* dataset, const char* series, const char* detector,
                    const char* status, void*) {
  std::fprintf(stderr, "%-6s %-24s %-12s %s\n", dataset, series, detector, status);
}

int run_command(const RunOptions& o) {
  tsad_run_config* config = nullptr;
  tsad_status st = tsad_run_config_create(&config);
  if (st != TSAD_OK) return report_failure("config", st);
  auto set = [&](const char* key, const std::string& value) {
    if (st == TSAD_OK) st = tsad_run_config_set(config, key, value.c_str());
  };
  if (!o.config_path.empty()) st = tsad_run_config_load_file(config, o.config_path.c_str());
  for (const auto& d : o.datasets) set("dataset", d);
  for (const auto& d : o.detectors) set("detector", d);
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "tsad: --param expects detector.key=value, got '%s'\n", p.c_str());
      tsad_run_config_destroy(config);
      return 2;
    }
    set(p.substr(0, eq).c_str(), p.substr(eq + 1));
  }
  if (!o.seed.empty()) set("seed", o.seed);
  if (!o.out.empty()) set("output_dir", o.out);
  if (!o.data_dir.empty()) set("data_dir", o.data_dir);
  if (o.no_standardize) set("standardize", "false");
  if (o.detrend) set("detrend", "true");
  if (o.deseasonalize > 0) {
    set("deseasonalize", "true");
    set("period", std::to_string(o.deseasonalize));
  }
  if (o.repeat > 0) set("repeat", std::to_string(o.repeat));
  if (o.synth_count > 0) set("synth_count", std::to_string(o.synth_count));
  if (st != TSAD_OK) {
    tsad_run_config_destroy(config);
    return report_failure("configuration", st);
  }

  tsad_benchmark* bench = nullptr;
  st = tsad_benchmark_run(config, o.quiet ? nullptr : print_progress, nullptr, &bench);
  const std::string out_dir = tsad_run_config_output_dir(config);
  tsad_run_config_destroy(config);
  if (st != TSAD_OK) return report_failure("run", st);

  st = tsad_benchmark_write(bench, out_dir.c_str());
  if (st != TSAD_OK) {
    tsad_benchmark_destroy(bench);
    return report_failure("writing reports", st);
  }
  const size_t rows = tsad_benchmark_row_count(bench);
  const size_t ok = tsad_benchmark_ok_count(bench);
  tsad_benchmark_destroy(bench);
  std::printf("%zu rows, %zu ok; reports in %s\n", rows, ok, out_dir.c_str());
  return ok == 0 ? 1 : 0;
}

int list_command(bool as_json) {
  char* text = nullptr;
  const tsad_status st = tsad_catalog_json(&text);
  if (st != TSAD_OK) return report_failure("catalog", st);
  if (as_json) {
    std::printf("%s\n", text);
    tsad_string_free(text);
    return 0;
  }
  const auto catalog = nlohmann::json::parse(text);
  tsad_string_free(text);
  for (const auto& d : catalog) {
    std::printf("%-12s %-12s %s\n", d["name"].get<std::string>().c_str(),
                d["family"].get<std::string>().c_str(), d["summary"].get<std::string>().c_str());
    for (const auto& h : d["hyperparameters"]) {
      std::printf("    %-14s default %-30s %s\n", h["key"].get<std::string>().c_str(),
                  h["default"].get<std::string>().c_str(),
                  h["description"].get<std::string>().c_str());
    }
  }
  return 0;
}

int generate_command(const std::string& spec_path, const std::string& out) {
  std::ifstream in(spec_path);
  if (!in) {
    std::fprintf(stderr, "tsad: cannot read %s\n", spec_path.c_str());
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  tsad_series* series = nullptr;
  tsad_status st = tsad_series_generate(ss.str().c_str(), &series);
  if (st != TSAD_OK) return report_failure("generate-synth", st);
  st = tsad_series_write_csv(series, out.empty() ? "/dev/stdout" : out.c_str());
  tsad_series_destroy(series);
  if (st != TSAD_OK) return report_failure("write", st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsad: univariate time-series anomaly detection benchmark"};
  app.set_version_flag("--version", std::string(tsad_version()));
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "run detectors over datasets and write reports");
  run_cmd->add_option("--config", run.config_path, "key=value config file");
  run_cmd->add_option("--dataset", run.datasets, "UD1..UD4, NYCT, SYNTH or a manifest path");
  run_cmd->add_option("--detector", run.detectors, "detector name (repeatable)");
  run_cmd->add_option("--param", run.params, "detector.key=value hyperparameter (repeatable)");
  run_cmd->add_option("--seed", run.seed, "random seed");
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_option("--data-dir", run.data_dir, "dataset root (default $TSAD_DATA_DIR)");
  run_cmd->add_flag("--no-standardize", run.no_standardize, "skip standardization");
  run_cmd->add_flag("--detrend", run.detrend, "first-difference train and test");
  run_cmd->add_option("--deseasonalize", run.deseasonalize, "seasonal difference with this period");
  run_cmd->add_option("--repeat", run.repeat, "repetitions per row for timing");
  run_cmd->add_option("--synth-count", run.synth_count, "series in the SYNTH dataset");
  run_cmd->add_flag("-q,--quiet", run.quiet, "no per-row progress");

  bool as_json = false;
  auto* list_cmd = app.add_subcommand("list", "list detectors and hyperparameters");
  list_cmd->add_flag("--json", as_json, "print the catalog as JSON");

  std::string spec_path, synth_out;
  auto* gen_cmd = app.add_subcommand("generate-synth", "write a synthetic series as CSV");
  gen_cmd->add_option("--spec", spec_path, "key=value synthetic spec")->required();
  gen_cmd->add_option("--out", synth_out, "output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);
  if (*run_cmd) return run_command(run);
  if (*list_cmd) return list_command(as_json);
  if (*gen_cmd) return generate_command(spec_path, synth_out);
  return 2;
}
