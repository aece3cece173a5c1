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

// Experiment configuration, circuit files, and the three-engine comparison
// run behind the qlrhv command.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlrhv/bell.hpp"
#include "qlrhv/circuit.hpp"
#include "qlrhv/frames.hpp"
#include "qlrhv/lrhv.hpp"
#include "qlrhv/measurement.hpp"
#include "qlrhv/nmr.hpp"

namespace qlrhv::cli {

enum class StateKind { zero, ghz, singlet_pairs, matrix };
enum class EpsilonSource { value, eta, alpha };

struct Engines {
  bool oracle = true;
  bool quasi = true;
  bool lrhv = true;
};

/// "oracle", "quasi", "lrhv", or "all". Throws ConfigError.
Engines parse_engines(const std::string& text);

struct ExperimentConfig {
  std::size_t num_qubits = 1;
  Frame frame = Frame::tetrahedron();
  StateKind state = StateKind::zero;
  std::filesystem::path state_file;
  EpsilonSource epsilon_source = EpsilonSource::eta;
  double epsilon = 0.0;  ///< used when epsilon_source == value
  double alpha = 2e-5;   ///< physical polarization; always reported
  std::filesystem::path circuit_file;
  std::vector<MeasurementSpec> specs;
  Engines engines;
  std::size_t molecules = Ensemble::kDefaultMolecules;
  std::uint64_t seed = 1;
  UpdateMode mode = UpdateMode::discrete;
  double gamma = 1.0;
  double dt = 1.0;
  double pulse_length = 1.0;
  double pulse_gap = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> chsh_pairs;
  std::size_t chsh_resolution = 32;
  std::vector<TemporalProbe> temporal_probes;
  std::filesystem::path out_csv;
  std::filesystem::path out_json;
};

inline constexpr std::size_t kMaxAllSpecsQubits = 4;

/// INI text: sections [experiment], [schedule], [bell], [output]. Relative
/// paths resolve against `base_dir`. Throws ConfigError or ParseError.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Enforces the engine qubit caps. The oracle is dropped silently above its
/// cap when other engines run; requesting it alone there is an error.
void validate_config(ExperimentConfig& cfg);

/// Line-oriented gates: `NAME q...`, `NAME(p, ...) q...`, `RAW file q...`.
/// '#' starts a comment. Errors carry the line number.
Circuit parse_circuit(const std::string& text, std::size_t num_qubits, const std::filesystem::path& base_dir = {});
Circuit load_circuit(const std::filesystem::path& path, std::size_t num_qubits);

/// Square complex matrix, one row per line; entries as `re` or `(re,im)`.
ComplexMatrix parse_matrix(const std::string& text);
ComplexMatrix load_matrix(const std::filesystem::path& path);

struct ComparisonRow {
  double time = 0.0;
  std::size_t spec_id = 0;
  std::string spec;
  std::optional<double> oracle;
  std::optional<double> quasi;
  std::optional<CorrelationEstimate> lrhv;
  std::optional<double> z;  ///< |lrhv - reference| / std_error; reference is the oracle, else quasi
};

struct ComparisonReport {
  Thresholds thresholds;
  double epsilon_physical = 0.0;
  std::vector<ComparisonRow> rows;
  std::vector<IntervalStats> intervals;
  nlohmann::ordered_json bell = nlohmann::ordered_json::array();
  double max_abs_z = 0.0;
  bool agree = true;         ///< every |z| <= 5
  bool bell_violated = false;  ///< any LRHV Bell report flagged a violation

  int exit_code() const { return agree && !bell_violated ? 0 : 1; }
};

ComparisonReport run_experiment(const ExperimentConfig& cfg);

/// time,spec_id,spec,oracle,quasi,lrhv_mean,lrhv_std_error,z; absent values are empty fields.
void write_csv(std::ostream& os, const ComparisonReport& report);
nlohmann::ordered_json summary_json(const ExperimentConfig& cfg, const ComparisonReport& report);
void print_table(std::ostream& os, const ComparisonReport& report);

}  // namespace qlrhv::cli
