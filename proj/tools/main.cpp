// Copyright 2026 The qlrhv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qlrhv: runs the oracle, quasi-exact, and LRHV engines on one experiment
// and compares them. Exit status 0 means every LRHV estimate agrees with the
// reference within 5 standard errors and no Bell bound is violated.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "qlrhv/error.hpp"
#include "qlrhv/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quasidistribution and local hidden-variable simulator for pseudopure NMR states"};
  std::string config_path;
  std::optional<std::string> engine;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> molecules;
  std::optional<std::string> out_csv, out_json;
  std::optional<std::size_t> threads;
  app.add_option("--config", config_path, "experiment file (INI)")->required()->check(CLI::ExistingFile);
  app.add_option("--engine", engine, "oracle, quasi, lrhv, or all")
      ->check(CLI::IsMember({"oracle", "quasi", "lrhv", "all"}));
  app.add_option("--seed", seed, "master seed");
  app.add_option("--molecules", molecules, "LRHV ensemble size")->check(CLI::PositiveNumber);
  app.add_option("--out-csv", out_csv, "per-spec comparison CSV");
  app.add_option("--out-json", out_json, "JSON summary");
  app.add_option("--threads", threads, "worker threads (default: QLRHV_NUM_THREADS)")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    if (threads) {
      qlrhv::set_num_threads(*threads);
    } else if (const std::size_t env = qlrhv::threads_from_environment(); env > 0) {
      qlrhv::set_num_threads(env);
    }
    qlrhv::cli::ExperimentConfig cfg = qlrhv::cli::load_config(config_path);
    if (engine) cfg.engines = qlrhv::cli::parse_engines(*engine);
    if (seed) cfg.seed = *seed;
    if (molecules) cfg.molecules = *molecules;
    if (out_csv) cfg.out_csv = *out_csv;
    if (out_json) cfg.out_json = *out_json;
    qlrhv::cli::validate_config(cfg);

    const qlrhv::cli::ComparisonReport report = qlrhv::cli::run_experiment(cfg);
    qlrhv::cli::print_table(std::cout, report);
    if (!cfg.out_csv.empty()) {
      std::ofstream os(cfg.out_csv, std::ios::binary | std::ios::trunc);
      if (!os) throw qlrhv::ConfigError("cannot write " + cfg.out_csv.string());
      qlrhv::cli::write_csv(os, report);
    }
    if (!cfg.out_json.empty()) {
      std::ofstream os(cfg.out_json, std::ios::binary | std::ios::trunc);
      if (!os) throw qlrhv::ConfigError("cannot write " + cfg.out_json.string());
      os << qlrhv::cli::summary_json(cfg, report).dump(2) << '\n';
    }
    return report.exit_code();
  } catch (const qlrhv::Error& e) {
    std::cerr << "qlrhv: " << e.what() << '\n';
    return 2;
  }
}
