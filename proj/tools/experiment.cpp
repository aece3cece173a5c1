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

#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qlrhv/error.hpp"
#include "qlrhv/oracle.hpp"
#include "qlrhv/quasi.hpp"

namespace qlrhv::cli {

namespace {

using boost::property_tree::ptree;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] != '-') v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError(key + ": not a nonnegative integer: '" + text + "'");
  return v;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment",
       {"num_qubits", "frame", "state", "state_file", "epsilon", "alpha", "circuit", "specs", "engine", "molecules",
        "seed"}},
      {"schedule", {"mode", "gamma", "dt", "pulse_length", "gap"}},
      {"bell", {"chsh", "resolution", "leggett_garg"}},
      {"output", {"csv", "json"}},
  };
  return keys;
}

std::optional<std::string> get(const ptree& tree, const std::string& key) {
  if (auto v = tree.get_optional<std::string>(ptree::path_type(key, '/'))) return trim(*v);
  return std::nullopt;
}

std::string format_tuple(std::size_t index, std::size_t n, std::size_t f) {
  const auto digits = tuple_digits(index, n, f);
  std::string out = "(";
  for (std::size_t r = 0; r < n; ++r) out += (r ? "," : "") + std::to_string(digits[r]);
  return out + ")";
}

ComplexMatrix projector_product(const ComplexMatrix& single, std::size_t n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t r = 0; r < n; ++r) out = kron(out, single);
  return out;
}

ComplexMatrix singlet_projector() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

ComplexMatrix pure_dense(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.num_qubits;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  switch (cfg.state) {
    case StateKind::zero:
      return DensityOperator::basis(n, 0).matrix();
    case StateKind::ghz: {
      ComplexVector psi = ComplexVector::Zero(dim);
      psi(0) = psi(dim - 1) = 1.0 / std::sqrt(2.0);
      return psi * psi.adjoint();
    }
    case StateKind::singlet_pairs:
      return projector_product(singlet_projector(), n / 2);
    case StateKind::matrix:
      return load_matrix(cfg.state_file);
  }
  throw ConfigError("unknown state");
}

// Quasi weights of rho1 built from per-qubit or per-pair factors, so named
// states work beyond the dense-operator cap.
QuasiState pure_quasi(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.num_qubits;
  const Frame& f = cfg.frame;
  switch (cfg.state) {
    case StateKind::zero: {
      const QuasiState one = quasi_from_density(DensityOperator::basis(1, 0), f);
      QuasiState w = one;
      for (std::size_t r = 1; r < n; ++r) w = quasi_product(w, one);
      return w;
    }
    case StateKind::ghz: {
      ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = p0, up = p0, dn = p0;
      p0(0, 0) = p1(1, 1) = up(0, 1) = dn(1, 0) = 1.0;
      std::vector<ProductTerm> terms;
      for (const ComplexMatrix& m : {p0, p1, up, dn}) terms.push_back({0.5, std::vector<ComplexMatrix>(n, m)});
      return quasi_from_product_terms(terms, f, n);
    }
    case StateKind::singlet_pairs: {
      const QuasiState pair = quasi_from_density(DensityOperator(singlet_projector(), 2), f);
      QuasiState w = pair;
      for (std::size_t r = 2; r < n; r += 2) w = quasi_product(w, pair);
      return w;
    }
    case StateKind::matrix:
      return quasi_from_density(DensityOperator(load_matrix(cfg.state_file), n), f);
  }
  throw ConfigError("unknown state");
}

double effective_epsilon(const ExperimentConfig& cfg) {
  switch (cfg.epsilon_source) {
    case EpsilonSource::value:
      return cfg.epsilon;
    case EpsilonSource::eta:
      return eta(cfg.num_qubits);
    case EpsilonSource::alpha:
      return epsilon_pseudopure({cfg.alpha, cfg.num_qubits});
  }
  return cfg.epsilon;
}

std::string state_name(StateKind k) {
  switch (k) {
    case StateKind::zero:
      return "zero";
    case StateKind::ghz:
      return "ghz";
    case StateKind::singlet_pairs:
      return "singlet_pairs";
    case StateKind::matrix:
      return "matrix";
  }
  return "?";
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double z_score(const CorrelationEstimate& est, double reference) {
  const double diff = std::abs(est.mean - reference);
  if (est.std_error > 0.0) return diff / est.std_error;
  return diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

Engines parse_engines(const std::string& text) {
  if (text == "all") return {true, true, true};
  if (text == "oracle") return {true, false, false};
  if (text == "quasi") return {false, true, false};
  if (text == "lrhv") return {false, false, true};
  throw ConfigError("engine must be oracle, quasi, lrhv, or all (got '" + text + "')");
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  // '#' comments may trail a value; ';' stays reserved for full-line comments
  // because spec and pair lists use it as a separator.
  std::string cleaned;
  {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      cleaned += line;
      cleaned += '\n';
    }
  }
  ptree tree;
  try {
    std::istringstream in(cleaned);
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || !body.data().empty()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }

  ExperimentConfig cfg;
  const auto n = get(tree, "experiment/num_qubits");
  if (!n) throw ConfigError("experiment/num_qubits is required");
  cfg.num_qubits = to_unsigned("num_qubits", *n);
  if (cfg.num_qubits == 0) throw ConfigError("num_qubits must be at least 1");

  if (auto v = get(tree, "experiment/frame")) {
    if (*v == "tetrahedron" || *v == "cardinal6") {
      cfg.frame = builtin_frame(*v);
    } else {
      cfg.frame = load_frame_file(resolve(base_dir, *v));
    }
  }
  if (auto v = get(tree, "experiment/state")) {
    if (*v == "zero") {
      cfg.state = StateKind::zero;
    } else if (*v == "ghz") {
      cfg.state = StateKind::ghz;
    } else if (*v == "singlet_pairs") {
      cfg.state = StateKind::singlet_pairs;
    } else if (*v == "matrix") {
      cfg.state = StateKind::matrix;
    } else {
      throw ConfigError("state must be zero, ghz, singlet_pairs, or matrix (got '" + *v + "')");
    }
  }
  if (auto v = get(tree, "experiment/state_file")) cfg.state_file = resolve(base_dir, *v);
  if (cfg.state == StateKind::matrix && cfg.state_file.empty()) throw ConfigError("state = matrix needs state_file");
  if (cfg.state == StateKind::singlet_pairs && cfg.num_qubits % 2 != 0) {
    throw ConfigError("singlet_pairs needs an even qubit count");
  }
  if (auto v = get(tree, "experiment/alpha")) cfg.alpha = to_double("alpha", *v);
  if (auto v = get(tree, "experiment/epsilon")) {
    if (*v == "eta") {
      cfg.epsilon_source = EpsilonSource::eta;
    } else if (*v == "alpha") {
      cfg.epsilon_source = EpsilonSource::alpha;
    } else {
      cfg.epsilon_source = EpsilonSource::value;
      cfg.epsilon = to_double("epsilon", *v);
      if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0) throw BadEpsilon("epsilon must lie in [0, 1]");
    }
  }
  if (auto v = get(tree, "experiment/circuit")) cfg.circuit_file = resolve(base_dir, *v);
  const std::string specs = get(tree, "experiment/specs").value_or("all");
  if (specs == "all") {
    if (cfg.num_qubits > kMaxAllSpecsQubits) {
      throw ConfigError("specs = all is limited to " + std::to_string(kMaxAllSpecsQubits) +
                        " qubits; list the specs explicitly");
    }
    cfg.specs = all_specs(cfg.num_qubits, pauli_axes());
  } else {
    for (const std::string& s : split(specs, ';')) {
      MeasurementSpec spec = parse_spec(s);
      if (spec.size() != cfg.num_qubits) throw ConfigError("spec '" + s + "' does not have num_qubits axes");
      cfg.specs.push_back(std::move(spec));
    }
  }
  if (auto v = get(tree, "experiment/engine")) cfg.engines = parse_engines(*v);
  if (auto v = get(tree, "experiment/molecules")) cfg.molecules = to_unsigned("molecules", *v);
  if (auto v = get(tree, "experiment/seed")) cfg.seed = to_unsigned("seed", *v);

  if (auto v = get(tree, "schedule/mode")) {
    if (*v == "discrete") {
      cfg.mode = UpdateMode::discrete;
    } else if (*v == "quasicontinuous") {
      cfg.mode = UpdateMode::quasicontinuous;
    } else {
      throw ConfigError("schedule mode must be discrete or quasicontinuous");
    }
  }
  if (auto v = get(tree, "schedule/gamma")) cfg.gamma = to_double("gamma", *v);
  if (auto v = get(tree, "schedule/dt")) cfg.dt = to_double("dt", *v);
  if (auto v = get(tree, "schedule/pulse_length")) cfg.pulse_length = to_double("pulse_length", *v);
  if (auto v = get(tree, "schedule/gap")) cfg.pulse_gap = to_double("gap", *v);

  if (auto v = get(tree, "bell/chsh")) {
    for (const std::string& pair : split(*v, ';')) {
      const auto parts = split(pair, ' ');
      if (parts.size() != 2) throw ConfigError("chsh pairs are written 'r s'");
      cfg.chsh_pairs.emplace_back(to_unsigned("chsh", parts[0]), to_unsigned("chsh", parts[1]));
    }
  }
  if (auto v = get(tree, "bell/resolution")) cfg.chsh_resolution = to_unsigned("resolution", *v);
  if (auto v = get(tree, "bell/leggett_garg")) {
    for (const std::string& probe : split(*v, ';')) {
      const auto parts = split(probe, ' ');
      if (parts.size() != 2) throw ConfigError("leggett_garg probes are written 'qubit axis'");
      cfg.temporal_probes.push_back({to_unsigned("leggett_garg", parts[0]), parse_axis(parts[1])});
    }
  }
  if (auto v = get(tree, "output/csv")) cfg.out_csv = resolve(base_dir, *v);
  if (auto v = get(tree, "output/json")) cfg.out_json = resolve(base_dir, *v);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

void validate_config(ExperimentConfig& cfg) {
  const std::size_t n = cfg.num_qubits;
  const bool needs_quasi = cfg.engines.quasi || cfg.engines.lrhv;
  if (needs_quasi && n > QuasiState::kMaxQubits) {
    throw ConfigError("quasi and LRHV engines support at most " + std::to_string(QuasiState::kMaxQubits) +
                      " qubits (got " + std::to_string(n) + ")");
  }
  if (cfg.engines.oracle && n > DensityOperator::kMaxQubits) {
    if (!needs_quasi) {
      throw ConfigError("the oracle engine supports at most " + std::to_string(DensityOperator::kMaxQubits) +
                        " qubits (got " + std::to_string(n) + ")");
    }
    cfg.engines.oracle = false;
  }
  if (cfg.state == StateKind::matrix && n > DensityOperator::kMaxQubits) {
    throw ConfigError("raw matrix states are limited to " + std::to_string(DensityOperator::kMaxQubits) + " qubits");
  }
  if (cfg.engines.lrhv && cfg.molecules == 0) throw ConfigError("molecules must be positive");
  for (const auto& [r, s] : cfg.chsh_pairs) {
    if (r >= n || s >= n || r == s) throw ConfigError("chsh pair out of range or repeated");
  }
  if (!cfg.chsh_pairs.empty() && cfg.chsh_resolution < 8) throw ConfigError("bell resolution must be at least 8");
  for (const TemporalProbe& p : cfg.temporal_probes) {
    if (p.qubit >= n) throw ConfigError("leggett_garg qubit out of range");
  }
}

ComplexMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Complex> row;
    for (std::string tok; ls >> tok;) {
      std::istringstream ts(tok);
      Complex z;
      char extra = 0;
      if (!(ts >> z) || (ts >> extra)) throw ParseError("bad matrix entry '" + tok + "'", line_no);
      row.push_back(z);
    }
    if (!row.empty()) {
      if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix row", line_no);
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty() || rows.size() != rows.front().size()) throw ParseError("matrix must be square and nonempty");
  const auto d = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rows[i][j];
  return m;
}

ComplexMatrix load_matrix(const std::filesystem::path& path) { return parse_matrix(read_file(path)); }

Circuit parse_circuit(const std::string& text, std::size_t num_qubits, const std::filesystem::path& base_dir) {
  Circuit circuit(num_qubits);
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      std::string head;
      std::string rest;
      std::vector<double> params;
      const auto open = line.find('(');
      const auto space = line.find_first_of(" \t");
      if (open != std::string::npos && (space == std::string::npos || open < space)) {
        const auto close = line.find(')', open);
        if (close == std::string::npos) throw ParseError("missing ')'", line_no);
        head = line.substr(0, open);
        for (const std::string& p : split(line.substr(open + 1, close - open - 1), ',')) {
          params.push_back(to_double("gate parameter", p));
        }
        rest = line.substr(close + 1);
      } else {
        head = line.substr(0, space);
        rest = space == std::string::npos ? std::string() : line.substr(space);
      }
      std::string name = trim(head);
      std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
      std::istringstream rs(rest);
      std::vector<std::string> tokens;
      for (std::string t; rs >> t;) tokens.push_back(t);
      if (name == "RAW") {
        if (tokens.empty()) throw ParseError("RAW needs a matrix file", line_no);
        const ComplexMatrix m = load_matrix(resolve(base_dir, tokens.front()));
        std::vector<std::size_t> targets;
        for (std::size_t k = 1; k < tokens.size(); ++k) targets.push_back(to_unsigned("qubit index", tokens[k]));
        circuit.add("RAW", m, targets);
        continue;
      }
      std::vector<std::size_t> targets;
      for (const std::string& t : tokens) targets.push_back(to_unsigned("qubit index", t));
      if (gates::arity(name) == 0) throw ParseError("unknown gate '" + name + "'", line_no);
      circuit.add(name, targets, params);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return circuit;
}

Circuit load_circuit(const std::filesystem::path& path, std::size_t num_qubits) {
  return parse_circuit(read_file(path), num_qubits, path.parent_path());
}

ComparisonReport run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  validate_config(cfg);
  const std::size_t n = cfg.num_qubits;
  const Circuit circuit = cfg.circuit_file.empty() ? Circuit(n) : load_circuit(cfg.circuit_file, n);
  const std::size_t num_gates = circuit.size();
  const double eps = effective_epsilon(cfg);

  ComparisonReport report;
  report.thresholds = thresholds(eps, n);
  report.epsilon_physical = epsilon_pseudopure({cfg.alpha, n});

  // Reference values per completed-gate count.
  std::vector<std::vector<double>> oracle_values, quasi_values;
  if (cfg.engines.oracle) {
    DensityOperator rho = pseudopure_state(DensityOperator(pure_dense(cfg), n), eps);
    for (std::size_t g = 0; g <= num_gates; ++g) {
      if (g > 0) {
        const Gate& gate = circuit.gates()[g - 1];
        rho = apply_unitary(rho, gate.matrix, gate.targets);
      }
      std::vector<double> vals;
      for (const MeasurementSpec& s : cfg.specs) vals.push_back(correlation_trace(rho, s));
      oracle_values.push_back(std::move(vals));
    }
  }
  std::optional<QuasiState> initial;
  std::optional<QuasiState> final_weights;
  if (cfg.engines.quasi || cfg.engines.lrhv) {
    QuasiState w = mix_with_uniform(pure_quasi(cfg), eps);
    initial = w;
    for (std::size_t g = 0; g <= num_gates; ++g) {
      if (g > 0) {
        const Gate& gate = circuit.gates()[g - 1];
        apply_gate_in_place(w, transition_matrix(gate.matrix, cfg.frame, gate.targets));
      }
      if (cfg.engines.lrhv) {
        try {
          assert_lrhv_admissible(w);
        } catch (const NegativeQuasiWeight& e) {
          std::ostringstream detail;
          detail.precision(6);
          detail << "tuple " << format_tuple(e.index(), n, cfg.frame.size());
          detail << (g == 0 ? " in the initial state" : " after gate " + std::to_string(g) + " (" +
                                                            circuit.gates()[g - 1].name + ")");
          detail << "; epsilon = " << eps << " vs eta = " << report.thresholds.eta << " (regime "
                 << to_string(report.thresholds.regime) << "): the state is outside the LRHV model's domain";
          throw NegativeQuasiWeight(e.index(), e.value(), detail.str());
        }
      }
      if (cfg.engines.quasi) {
        std::vector<double> vals;
        for (const MeasurementSpec& s : cfg.specs) vals.push_back(correlation_quasi(w, s));
        quasi_values.push_back(std::move(vals));
      }
    }
    final_weights = std::move(w);
  }

  // Time points: (time, completed gates, optional LRHV snapshot).
  struct TimePoint {
    double time;
    std::size_t gates_done;
    const Snapshot* snapshot;
  };
  std::vector<TimePoint> points;
  std::optional<Ensemble> ensemble;
  Trajectory trajectory;
  UpdateSchedule schedule;
  if (cfg.mode == UpdateMode::quasicontinuous) {
    schedule = UpdateSchedule::back_to_back(num_gates, cfg.pulse_length, cfg.gamma, cfg.dt, cfg.pulse_gap);
  }
  if (cfg.engines.lrhv) {
    ensemble.emplace(*initial, cfg.molecules, cfg.seed);
    TrajectoryOptions opts;
    opts.specs = cfg.specs;
    opts.probes = cfg.temporal_probes;
    opts.pulse_ends_only = true;
    trajectory = run_schedule(*ensemble, schedule, circuit, opts);
    report.intervals = trajectory.intervals;
    for (const Snapshot& snap : trajectory.snapshots) {
      std::size_t done = num_gates;
      if (cfg.mode == UpdateMode::discrete) {
        done = snap.step;
      } else {
        done = static_cast<std::size_t>(std::count_if(schedule.pulses.begin(), schedule.pulses.end(), [&](const auto& p) {
          return std::llround(p.end / schedule.dt) <= static_cast<long long>(snap.step);
        }));
      }
      points.push_back({snap.time, done, &snap});
    }
  } else {
    for (std::size_t g = 0; g <= num_gates; ++g) {
      const double t = cfg.mode == UpdateMode::discrete || g == 0 ? static_cast<double>(g) : schedule.pulses[g - 1].end;
      points.push_back({t, g, nullptr});
    }
  }

  for (const TimePoint& p : points) {
    for (std::size_t k = 0; k < cfg.specs.size(); ++k) {
      ComparisonRow row;
      row.time = p.time;
      row.spec_id = k;
      row.spec = cfg.specs[k].label();
      if (cfg.engines.oracle) row.oracle = oracle_values[p.gates_done][k];
      if (cfg.engines.quasi) row.quasi = quasi_values[p.gates_done][k];
      if (p.snapshot) {
        row.lrhv = p.snapshot->correlations[k];
        const std::optional<double> ref = row.oracle ? row.oracle : row.quasi;
        if (ref) {
          row.z = z_score(*row.lrhv, *ref);
          report.max_abs_z = std::max(report.max_abs_z, *row.z);
          if (*row.z > 5.0) report.agree = false;
        }
      }
      report.rows.push_back(std::move(row));
    }
  }

  for (const auto& [r, s] : cfg.chsh_pairs) {
    auto annotate = [&](nlohmann::ordered_json j, const std::string& engine) {
      nlohmann::ordered_json out;
      out["engine"] = engine;
      for (auto& [key, value] : j.items()) out[key] = value;
      return out;
    };
    if (cfg.engines.oracle) {
      DensityOperator rho = pseudopure_state(DensityOperator(pure_dense(cfg), n), eps);
      rho = evolve(rho, circuit);
      report.bell.push_back(annotate(bell_report(scan_max_chsh(oracle_correlator(rho, r, s), r, s, cfg.chsh_resolution)),
                                     "oracle"));
    }
    if (cfg.engines.quasi) {
      report.bell.push_back(annotate(
          bell_report(scan_max_chsh(quasi_correlator(*final_weights, r, s), r, s, cfg.chsh_resolution)), "quasi"));
    }
    if (cfg.engines.lrhv) {
      const auto j = annotate(bell_report(scan_max_chsh(*ensemble, r, s, cfg.chsh_resolution)), "lrhv");
      if (j["violated"].get<bool>()) report.bell_violated = true;
      report.bell.push_back(j);
    }
  }
  if (cfg.engines.lrhv && trajectory.snapshots.size() >= 3) {
    const std::size_t last = trajectory.snapshots.size() - 1;
    for (const TemporalProbe& probe : cfg.temporal_probes) {
      std::optional<std::pair<TemporalSetting, LeggettGarg>> worst;
      auto consider = [&](std::size_t a, std::size_t b, std::size_t c) {
        const TemporalSetting setting{{a, b, c}, probe.qubit, probe.axis};
        const LeggettGarg lg = leggett_garg(trajectory, setting);
        if (!worst || lg.k3 > worst->second.k3) worst.emplace(setting, lg);
      };
      for (std::size_t k = 1; k < last; ++k) {
        consider(0, k, last);
        consider(k - 1, k, k + 1);
      }
      nlohmann::ordered_json j;
      j["engine"] = "lrhv";
      const nlohmann::ordered_json lg = bell_report(worst->first, worst->second);
      for (const auto& [key, value] : lg.items()) j[key] = value;
      if (j["violated"].get<bool>()) report.bell_violated = true;
      report.bell.push_back(j);
    }
  }
  return report;
}

void write_csv(std::ostream& os, const ComparisonReport& report) {
  os << "time,spec_id,spec,oracle,quasi,lrhv_mean,lrhv_std_error,z\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_value(*v) : std::string(); };
  for (const ComparisonRow& row : report.rows) {
    os << format_value(row.time) << ',' << row.spec_id << ",\"" << row.spec << "\"," << opt(row.oracle) << ','
       << opt(row.quasi) << ',';
    if (row.lrhv) {
      os << format_value(row.lrhv->mean) << ',' << format_value(row.lrhv->std_error);
    } else {
      os << ',';
    }
    os << ',' << opt(row.z) << '\n';
  }
}

nlohmann::ordered_json summary_json(const ExperimentConfig& cfg, const ComparisonReport& report) {
  nlohmann::ordered_json j;
  auto& c = j["config"];
  c["num_qubits"] = cfg.num_qubits;
  c["frame"] = cfg.frame.label();
  c["state"] = state_name(cfg.state);
  c["engines"] = nlohmann::ordered_json::array();
  if (cfg.engines.oracle) c["engines"].push_back("oracle");
  if (cfg.engines.quasi) c["engines"].push_back("quasi");
  if (cfg.engines.lrhv) c["engines"].push_back("lrhv");
  c["molecules"] = cfg.molecules;
  c["seed"] = cfg.seed;
  c["mode"] = cfg.mode == UpdateMode::discrete ? "discrete" : "quasicontinuous";
  auto& t = j["thresholds"];
  t["epsilon"] = report.thresholds.epsilon;
  t["epsilon_physical"] = report.epsilon_physical;
  t["alpha"] = cfg.alpha;
  t["eta"] = report.thresholds.eta;
  t["eta_prime"] = report.thresholds.eta_prime;
  t["regime"] = to_string(report.thresholds.regime);
  j["intervals"] = nlohmann::ordered_json::array();
  for (const IntervalStats& s : report.intervals) {
    j["intervals"].push_back({{"gate", s.gate},
                              {"length", s.length},
                              {"mean_updates", s.mean_updates},
                              {"std_error", s.std_error},
                              {"forced", s.forced}});
  }
  j["bell"] = report.bell;
  j["rows"] = report.rows.size();
  j["max_abs_z"] = report.max_abs_z;
  j["agree"] = report.agree;
  j["bell_violated"] = report.bell_violated;
  j["exit_code"] = report.exit_code();
  return j;
}

void print_table(std::ostream& os, const ComparisonReport& report) {
  const Thresholds& t = report.thresholds;
  os << std::setprecision(6) << "epsilon " << t.epsilon << "  eta " << t.eta << "  eta' " << t.eta_prime << "  regime "
     << to_string(t.regime) << "  (physical epsilon " << report.epsilon_physical << ")\n";
  os << std::left << std::setw(8) << "time" << std::setw(24) << "spec" << std::right << std::setw(12) << "oracle"
     << std::setw(12) << "quasi" << std::setw(12) << "lrhv" << std::setw(12) << "std_err" << std::setw(8) << "z"
     << '\n';
  auto cell = [&](const std::optional<double>& v, int width) {
    std::ostringstream s;
    if (v) {
      s << std::fixed << std::setprecision(6) << *v;
    } else {
      s << "-";
    }
    os << std::setw(width) << s.str();
  };
  for (const ComparisonRow& row : report.rows) {
    os << std::left << std::setw(8) << row.time << std::setw(24) << row.spec << std::right;
    cell(row.oracle, 12);
    cell(row.quasi, 12);
    cell(row.lrhv ? std::optional<double>(row.lrhv->mean) : std::nullopt, 12);
    cell(row.lrhv ? std::optional<double>(row.lrhv->std_error) : std::nullopt, 12);
    std::ostringstream z;
    if (row.z) {
      z << std::fixed << std::setprecision(2) << *row.z;
    } else {
      z << "-";
    }
    os << std::setw(8) << z.str() << '\n';
  }
  for (const auto& b : report.bell) os << "bell: " << b.dump() << '\n';
  os << "max |z| " << std::setprecision(4) << report.max_abs_z << (report.agree ? "  (agree)" : "  (DISAGREE)")
     << (report.bell_violated ? "  Bell bound violated" : "") << '\n';
}

}  // namespace qlrhv::cli
